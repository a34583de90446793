// SPDX-License-Identifier: Apache-2.0
#include "fpcode/offset_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fpcode::offset_stats {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lchoose(double a, double b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
         std::lgamma(a - b + 1.0);
}

void check_params(std::uint32_t n, std::uint32_t w, std::uint16_t q,
                  std::uint32_t d) {
  if (q < 2 || q > 256) throw std::invalid_argument("q must be in [2, 256]");
  if (w > n) throw std::invalid_argument("weight w cannot exceed n");
  if (d > n) throw std::invalid_argument("distance d cannot exceed n");
}

// Dense pmf over distances 0..n. The distance splits as d + w - K - A:
// K coordinates are nonzero in both words (hypergeometric overlap of the
// supports) and A of those K agree exactly (each with chance 1/(q-1)).
std::vector<double> dense_pmf(std::uint32_t n, std::uint32_t w,
                              std::uint16_t q, std::uint32_t d) {
  std::vector<double> pmf(n + 1, 0.0);
  const double lden = lchoose(n, w);
  const std::uint32_t klo = (d + w > n) ? d + w - n : 0;
  const std::uint32_t khi = std::min(d, w);
  const double lp = -std::log(q - 1.0);       // log 1/(q-1)
  const double lq = std::log((q - 2.0) / (q - 1.0));  // -inf at q = 2
  for (std::uint32_t k = klo; k <= khi; ++k) {
    const double lhyp =
        lchoose(d, k) + lchoose(n - d, w - k) - lden;
    if (q == 2) {
      // Nonzero symbols are forced, so all K overlap coordinates agree.
      pmf[d + w - 2 * k] += std::exp(lhyp);
      continue;
    }
    for (std::uint32_t a = 0; a <= k; ++a) {
      const double lbin = lchoose(k, a) + a * lp + (k - a) * lq;
      pmf[d + w - k - a] += std::exp(lhyp + lbin);
    }
  }
  return pmf;
}

}  // namespace

std::vector<double> conditional_distance_pmf(std::uint32_t n,
                                             std::uint32_t w,
                                             std::uint16_t q,
                                             std::uint32_t d) {
  check_params(n, w, q, d);
  return dense_pmf(n, w, q, d);
}

DistanceTable conditional_distance_table(std::uint32_t n, std::uint32_t w,
                                         std::uint16_t q, std::uint32_t d) {
  check_params(n, w, q, d);
  std::vector<double> pmf = dense_pmf(n, w, q, d);
  DistanceTable t;
  double cum = 0.0;
  for (std::uint32_t v = 0; v <= n; ++v) {
    if (pmf[v] <= 0.0) continue;
    cum += pmf[v];
    t.values.push_back(v);
    t.cdf.push_back(std::min(cum, 1.0));
    t.log_ccdf.push_back(std::log1p(-t.cdf.back()));
  }
  // Guard against rounding wiggles so binary searches see monotone data.
  for (std::size_t k = 1; k < t.log_ccdf.size(); ++k)
    t.log_ccdf[k] = std::min(t.log_ccdf[k], t.log_ccdf[k - 1]);
  if (!t.log_ccdf.empty()) t.log_ccdf.back() = kNegInf;
  return t;
}

std::uint32_t sample_min_distance(const DistanceTable& t, double count,
                                  double u) {
  if (t.values.empty())
    throw std::invalid_argument("empty distance table");
  if (!(count >= 1.0))
    throw std::invalid_argument("count must be at least 1");
  if (!(u >= 0.0 && u < 1.0))
    throw std::invalid_argument("u must lie in [0, 1)");
  const double target = std::log1p(-u);
  // P(min <= v_k) >= u  <=>  count * log1p(-cdf_k) <= log1p(-u); the
  // left side is nonincreasing in k, so take the first k satisfying it.
  std::size_t lo = 0, hi = t.values.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (count * t.log_ccdf[mid] <= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return t.values[lo];
}

GroupMinTable group_min_table(std::uint32_t n, std::uint32_t w,
                              std::uint16_t q, double m2) {
  check_params(n, w, q, 0);
  if (!(m2 >= 1.0))
    throw std::invalid_argument("group population must be at least 1");
  const double lp = std::log((q - 1.0) / q);
  const double lq = -std::log(static_cast<double>(q));
  std::vector<double> hit(n + 1, 0.0);  // L(x)
  for (std::uint32_t d = 0; d <= n; ++d) {
    const double lbin = lchoose(n, d) + d * lp + (n - d) * lq;
    const double b = std::exp(lbin);
    if (b == 0.0) continue;
    std::vector<double> pmf = dense_pmf(n, w, q, d);
    double cum = 0.0;
    for (std::uint32_t x = 0; x <= n; ++x) {
      cum = std::min(cum + pmf[x], 1.0);
      if (cum <= 0.0) continue;
      // 1 - (1 - cum)^m2 without cancellation at either extreme.
      hit[x] += b * (-std::expm1(m2 * std::log1p(-cum)));
    }
  }
  GroupMinTable t;
  t.log1m_hit.resize(n + 1);
  double run = 0.0;
  for (std::uint32_t x = 0; x <= n; ++x) {
    run = std::clamp(hit[x], run, 1.0);  // enforce monotone L
    t.log1m_hit[x] = std::log1p(-run);
  }
  t.log1m_hit[n] = kNegInf;  // every group has users within distance n
  return t;
}

std::uint32_t sample_group_min(const GroupMinTable& t, double groups,
                               double u) {
  if (t.log1m_hit.empty())
    throw std::invalid_argument("empty group table");
  if (!(groups >= 1.0))
    throw std::invalid_argument("group count must be at least 1");
  if (!(u >= 0.0 && u < 1.0))
    throw std::invalid_argument("u must lie in [0, 1)");
  const double target = std::log1p(-u);
  std::size_t lo = 0, hi = t.log1m_hit.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (groups * t.log1m_hit[mid] <= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return static_cast<std::uint32_t>(lo);
}

}  // namespace fpcode::offset_stats
