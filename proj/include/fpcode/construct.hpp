// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fpcode/core.hpp"
#include "fpcode/rng.hpp"

namespace fpcode {

// Randomized two-level construction: group g gets an i.i.d. uniform center
// R_g in Q^n, member m of group g gets codeword R_g + S_{g,m} (mod q) where
// S_{g,m} is i.i.d. uniform on the constant-weight sphere {x : wt(x) = w}.

struct ConstructionParams {
  std::uint16_t q = 0;
  std::uint32_t n = 0;
  std::uint32_t m1 = 0;
  std::uint32_t m2 = 0;
  double omega = 0.0;  // w = omega*n must be integral
  std::uint64_t seed = 0;
};

// omega*n snapped to the nearest integer when within 1e-9; throws
// std::invalid_argument if omega*n is not integral or omega outside [0, 1].
std::uint32_t required_integral_weight(double omega, std::uint32_t n);

// floor(base^x) with the exponent snapped to integers within 1e-9, as a
// double (two-level sweeps produce member counts far beyond 2^64).
double floor_power(double base, double x);

// Uniform draw from Q^n.
Fingerprint sample_center(std::uint32_t n, std::uint16_t q,
                          rng::Stream& stream);

// Uniform draw from the weight-w sphere: support uniform among the C(n, w)
// subsets, nonzero symbols i.i.d. uniform on {1, .., q-1}.
Fingerprint sample_constant_weight(std::uint32_t n, std::uint32_t w,
                                   std::uint16_t q, rng::Stream& stream);

// Builds the full code with provenance (centers, omega, w, seed). Centers
// and offsets use positional streams keyed by (seed, role, indices), so the
// result is a pure function of params.
TwoLevelCode build_random_two_level(const ConstructionParams& params);

// Minimum distances: d1 over pairs with different groups, d2 over pairs
// with different member indices (cross-group pairs included), d = min of
// the defined ones. An empty minimization is reported as n+1 ("undefined").
struct DistanceProfile {
  std::uint32_t d1 = 0;
  std::uint32_t d2 = 0;
  std::uint32_t d = 0;
  bool d1_defined = false;
  bool d2_defined = false;
};

DistanceProfile min_distances(const TwoLevelCode& code);

// Count of each column type (tuple of the t symbols in one coordinate)
// across the n coordinates of t aligned fingerprints.
std::map<std::vector<std::uint8_t>, std::uint64_t> column_type_counts(
    std::span<const Fingerprint> fps);

// Empirical check of the offset marginals: draws `samples` constant-weight
// vectors and tabulates per-coordinate symbol frequencies and pairwise
// nonzero-symbol joint frequencies against omega/(q-1) and its square.
struct OffsetDiagnostics {
  std::uint32_t n = 0;
  std::uint32_t w = 0;
  std::uint16_t q = 0;
  std::uint64_t samples = 0;
  double theory_marginal = 0.0;  // omega/(q-1), omega = w/n
  double theory_joint = 0.0;     // (omega/(q-1))^2, asymptotic reference
  // counts[coord][symbol], symbol in [0, q)
  std::vector<std::vector<std::uint64_t>> marginal_counts;
  // joint_counts[pair][(a-1)*(q-1) + (b-1)] for nonzero symbol pairs (a, b),
  // pair index enumerating l < m row-major
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::vector<std::uint64_t>> joint_counts;
  double max_abs_dev_marginal = 0.0;
  double max_abs_dev_joint = 0.0;
  // Chebyshev tail bound p(1-p)/(eps^2 N) at p = theory_marginal,
  // eps = max_abs_dev_marginal, N = samples.
  double chebyshev_bound = 0.0;
};

OffsetDiagnostics offset_pair_diagnostics(std::uint32_t n, std::uint32_t w,
                                          std::uint16_t q,
                                          std::uint64_t samples,
                                          std::uint64_t seed);

}  // namespace fpcode
