// SPDX-License-Identifier: Apache-2.0
// Exact distance distributions for codewords of the random construction,
// used by the large-population simulation engine to sample the minimum
// distance over astronomically many users without materializing them.
#pragma once

#include <cstdint>
#include <vector>

namespace fpcode::offset_stats {

// Distribution of dist(y, R + S) when S is uniform on the weight-w sphere
// of Q^n and d = wt(y - R) is known. Support values ascending; cdf[k] is
// P(dist <= values[k]); log_ccdf[k] = log1p(-cdf[k]) (-inf at the top).
struct DistanceTable {
  std::vector<std::uint32_t> values;
  std::vector<double> cdf;
  std::vector<double> log_ccdf;
};

DistanceTable conditional_distance_table(std::uint32_t n, std::uint32_t w,
                                         std::uint16_t q, std::uint32_t d);

// Same distribution as a dense pmf over distances 0..n.
std::vector<double> conditional_distance_pmf(std::uint32_t n,
                                             std::uint32_t w,
                                             std::uint16_t q,
                                             std::uint32_t d);

// Quantile of the minimum of `count` independent draws from the table:
// smallest v with P(min <= v) >= u. count >= 1 (huge counts fine; they
// only enter through count * log1p(-cdf)).
std::uint32_t sample_min_distance(const DistanceTable& t, double count,
                                  double u);

// Distance from y to the closest of m2 users sharing one fresh uniform
// center: wt(y - R) is Binomial(n, (q-1)/q) and the m2 offsets are
// independent given R. log1m_hit[x] = log1p(-L(x)) where L(x) is the
// probability that the group places some user within distance x of y.
struct GroupMinTable {
  std::vector<double> log1m_hit;  // indexed by x = 0..n
};

GroupMinTable group_min_table(std::uint32_t n, std::uint32_t w,
                              std::uint16_t q, double m2);

// Quantile of the minimum over `groups` independent fresh groups: smallest
// x with 1 - (1 - L(x))^groups >= u.
std::uint32_t sample_group_min(const GroupMinTable& t, double groups,
                               double u);

}  // namespace fpcode::offset_stats
