// SPDX-License-Identifier: Apache-2.0
// Monte Carlo estimation of the accusation error probabilities: each trial
// draws a fresh code realization, lets the coalition forge, decodes, and
// scores the group-level and user-level accusations.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpcode/core.hpp"

namespace fpcode {

// How decoding ties are scored. adversarial treats a trial as an error if
// ANY minimizer breaks the accusation (the property must hold for every
// choice the decoder could make); lex_first scores only the first
// minimizer; strict_fail scores a tie as a failed accusation.
enum class TieAccounting { adversarial, lex_first, strict_fail };

// materialized builds the full code each trial and decodes against it;
// virtualized materializes only the coalition and samples the innocents'
// minimum distances from their exact conditional distributions, which
// handles member counts far beyond anything storable. auto_select picks
// materialized for small codes and virtualized otherwise.
enum class Engine { auto_select, materialized, virtualized };

struct CoalitionPattern {
  enum class Kind { explicit_users, distinct_groups, same_group };
  Kind kind = Kind::distinct_groups;
  std::vector<UserId> users;  // explicit_users only
  std::uint32_t size = 1;     // pattern kinds only
};

struct TrialSpec {
  std::uint16_t q = 2;
  std::uint32_t n = 0;
  double omega = 0.0;
  // User counts as reals: the virtualized engine accepts populations far
  // beyond 2^64; materialized runs require small integral values.
  double m1 = 1.0;
  double m2 = 1.0;
  CoalitionPattern coalition;
  std::string strategy = "interleave_uniform";
  TieAccounting ties = TieAccounting::adversarial;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  Engine engine = Engine::auto_select;
  unsigned workers = 1;
};

struct TrialOutcome {
  bool e1_event = false;  // every accusable group is innocent of the forgery
  bool e2_event = false;  // some closest user is outside the coalition
  enum class ErrorClass : std::uint8_t {
    none,
    same_group_innocent,
    other_group_innocent,
    tie_failure
  };
  ErrorClass cls = ErrorClass::none;
  std::uint32_t pirate_min = 0;   // distance from forgery to the coalition
  std::uint32_t overall_min = 0;  // distance to the closest codeword
};

struct ErrorEstimate {
  std::uint64_t trials = 0;
  std::uint64_t e1_events = 0;
  std::uint64_t e2_events = 0;
  double e1_hat = 0.0;
  double e2_hat = 0.0;
  double e1_lo = 0.0, e1_hi = 0.0;  // Wilson 95%
  double e2_lo = 0.0, e2_hi = 0.0;
  std::uint64_t same_group_innocent = 0;
  std::uint64_t other_group_innocent = 0;
  std::uint64_t tie_failure = 0;
  // Point estimates under 1e-5 are flagged: at desk-scale trial counts
  // they only bound the error, they do not measure it.
  bool e1_below_resolution = false;
  bool e2_below_resolution = false;
  Engine engine_used = Engine::materialized;
};

// Wilson 95% score interval for a Bernoulli rate.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval wilson_interval(std::uint64_t events, std::uint64_t trials);

// The engine a spec will actually run under, after validation. Throws
// std::invalid_argument for unsupported combinations (the virtualized
// engine needs code-oblivious strategies and adversarial accounting).
Engine resolve_engine(const TrialSpec& spec);

// One trial, reproducible: all randomness derives from
// (spec.master_seed, trial_index).
TrialOutcome run_trial(const TrialSpec& spec, std::uint64_t trial_index);

// Monte Carlo aggregate over spec.trials trials. Results are identical
// for any worker count. Enforces the per-trial implication e1 => e2.
ErrorEstimate estimate_errors(const TrialSpec& spec);

// Error estimates across block lengths at fixed rates: per row, w = omega*n
// must be integral and the user counts are floor(q^(n*r1)), floor(q^(n*r2)).
struct SweepSpec {
  TrialSpec base;  // n, m1, m2 ignored; trials used when trials_per_n empty
  double r1 = 0.0;
  double r2 = 0.0;
  std::vector<std::uint32_t> n_list;
  std::vector<std::uint64_t> trials_per_n;  // empty or size 1 broadcasts
};

// CSV with one row per block length:
// n,w,M1,M2,trials,e1_hat,e1_lo,e1_hi,e2_hat,e2_lo,e2_hi,e1_events,
// e2_events,engine
std::string sweep_blocklength(const SweepSpec& spec);

}  // namespace fpcode
