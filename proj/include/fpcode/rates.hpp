// SPDX-License-Identifier: Apache-2.0
// Analytical rate-region machinery: q-ary entropy, the exponent function
// phi with its constrained maximizations f1/f2, and the achievable-region
// boundaries for the three coalition settings.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace fpcode {

// -x*log_q(x/(q-1)) - (1-x)*log_q(1-x) with 0*log 0 := 0. Requires
// x in [0,1], q >= 2.
double entropy_q(double x, std::uint32_t q);

// Distance caps used by the f1/f2 constraint sets. Require omega in [0,1],
// q >= 3.
double delta1(double omega, std::uint32_t q);
double delta2(double omega, std::uint32_t q);

struct PhiArgs {
  double omega = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint32_t q = 3;
};

// (1-gamma)h(alpha/(1-gamma)) + (gamma-beta)h((omega-alpha-beta)/(gamma-beta))
//   + gamma*h(beta/gamma) + (omega-alpha)log_q((q-2)/(q-1))
//   - beta*log_q(q-2),
// where each c*h(u/c) term is 0 when c = 0. Requires q >= 3 and
// alpha <= 1-gamma, beta <= gamma, alpha+beta <= omega, omega-alpha <= gamma.
double phi(const PhiArgs& args);

struct SearchCfg {
  double step = 1e-3;     // coarse grid step over (gamma, alpha, beta)
  int refine_rounds = 2;  // local refinements, step/10 each round
  unsigned workers = 1;
  // Replaces the built-in cap on gamma - beta + alpha; for experiments.
  std::optional<double> delta_override;
};

// Maximum of phi over the two constraint sets: gamma within
// [omega^2, 1-(1-omega)^2] for f1 and [omega(q-1)/q, 1-(1-omega)/q] for f2,
// in both cases with gamma - beta + alpha capped by delta1/delta2. Grid
// search with the stationary candidate alpha = omega(1-gamma),
// beta = omega*gamma/(q-1) injected at every gamma. Returns -infinity when
// the constraint set is empty.
double f1(double omega, std::uint32_t q, const SearchCfg& cfg = {});
double f2(double omega, std::uint32_t q, const SearchCfg& cfg = {});

// omega^3 * (log_q((q-1)/(q-2)) + log_q(q-2)/(q-1)); positive for
// omega > 0, q >= 3.
double bound_D(double omega, std::uint32_t q);

struct RegionPoint {
  double omega = 0.0;
  bool feasible = false;
  // Strict upper limits of the open achievable region; meaningful only
  // when feasible.
  double r1_sup = 0.0;
  double r2_sup = 0.0;
};

// Two pirates, group-level guarantees down to single-user accusations:
// R1 < 1 - h((q-1)/(2q) + omega), R2 < h(omega), for
// omega <= (q-1)/(2q).
RegionPoint region_21(std::uint32_t q, double omega);

// t pirates, user-level accusation for one: R1 < 1 - h(c + omega) with
// c = ((t-1)/t)(1 - 1/q^(t-1)), R2 < h(omega), feasible while
// c + omega <= (q-1)/q. Requires t >= 2.
RegionPoint region_t1(std::uint32_t q, std::uint32_t t, double omega);

// t pirates, user-level accusation for coalitions of two: R1 as in the
// t-pirate region, R2 < h(omega) - max(f1, f2). Requires q >= 3, t >= 2.
RegionPoint region_t2(std::uint32_t q, std::uint32_t t, double omega,
                      const SearchCfg& cfg = {});

// CSV table of region points over an omega grid. Columns: omega, R1_sup,
// R2_sup, feasible; for the binary two-pirate single-accusation case three
// constant reference columns are appended (the R1+R2=1 outer line and the
// 0.25 / 0.188 one-level comparison levels). Requires t2 in {1, 2} and
// t1 > t2.
std::string emit_region(std::uint32_t q, std::uint32_t t1, std::uint32_t t2,
                        std::span<const double> omegas,
                        const SearchCfg& cfg = {});

}  // namespace fpcode
