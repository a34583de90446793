// SPDX-License-Identifier: Apache-2.0
#include "fpcode/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fpcode/kernels.hpp"

namespace fpcode {

std::uint32_t required_integral_weight(double omega, std::uint32_t n) {
  if (!(omega >= 0.0 && omega <= 1.0))
    throw std::invalid_argument("omega must lie in [0, 1]");
  double wn = omega * n;
  double snapped = std::round(wn);
  if (std::fabs(wn - snapped) > 1e-9)
    throw std::invalid_argument("omega*n = " + std::to_string(wn) +
                                " is not an integer; choose omega and n so "
                                "the offset weight is integral");
  return static_cast<std::uint32_t>(snapped);
}

double floor_power(double base, double x) {
  double snapped = std::round(x);
  if (std::fabs(x - snapped) <= 1e-9) x = snapped;
  return std::floor(std::pow(base, x));
}

Fingerprint sample_center(std::uint32_t n, std::uint16_t q,
                          rng::Stream& stream) {
  if (q < 2 || q > 256) throw std::invalid_argument("alphabet size out of range");
  Fingerprint fp{q, std::vector<std::uint8_t>(n)};
  for (std::uint32_t i = 0; i < n; ++i)
    fp.symbols[i] = static_cast<std::uint8_t>(stream.bounded(q));
  return fp;
}

Fingerprint sample_constant_weight(std::uint32_t n, std::uint32_t w,
                                   std::uint16_t q, rng::Stream& stream) {
  if (q < 2 || q > 256) throw std::invalid_argument("alphabet size out of range");
  if (w > n)
    throw std::invalid_argument("offset weight " + std::to_string(w) +
                                " exceeds length " + std::to_string(n));
  // Partial Fisher-Yates: the first w entries are a uniform w-subset.
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::uint32_t i = 0; i < w; ++i) {
    std::uint32_t j = i + static_cast<std::uint32_t>(stream.bounded(n - i));
    std::swap(idx[i], idx[j]);
  }
  Fingerprint fp{q, std::vector<std::uint8_t>(n, 0)};
  for (std::uint32_t i = 0; i < w; ++i)
    fp.symbols[idx[i]] =
        static_cast<std::uint8_t>(1 + stream.bounded(q - 1u));
  return fp;
}

TwoLevelCode build_random_two_level(const ConstructionParams& params) {
  if (params.q < 2 || params.q > 256)
    throw std::invalid_argument("alphabet size out of range");
  if (params.n == 0) throw std::invalid_argument("length must be positive");
  if (params.m1 == 0 || params.m2 == 0)
    throw std::invalid_argument("group and member counts must be positive");
  std::uint32_t w = required_integral_weight(params.omega, params.n);

  const std::uint32_t n = params.n;
  std::vector<std::uint8_t> centers(std::size_t(params.m1) * n);
  std::vector<std::uint8_t> flat(std::size_t(params.m1) * params.m2 * n);
  for (std::uint32_t g = 0; g < params.m1; ++g) {
    rng::Stream cs(params.seed, rng::Role::center, g);
    Fingerprint center = sample_center(n, params.q, cs);
    std::copy(center.symbols.begin(), center.symbols.end(),
              centers.begin() + std::size_t(g) * n);
    for (std::uint32_t m = 0; m < params.m2; ++m) {
      rng::Stream os(params.seed, rng::Role::offset, g, m);
      Fingerprint offset = sample_constant_weight(n, w, params.q, os);
      std::uint8_t* dst = flat.data() + (std::size_t(g) * params.m2 + m) * n;
      kernels::add_mod(center.data(), offset.data(), dst, n, params.q);
    }
  }
  Provenance prov{params.omega, w, params.seed, std::move(centers)};
  return TwoLevelCode(params.q, n, params.m1, params.m2, std::move(flat),
                      std::move(prov));
}

DistanceProfile min_distances(const TwoLevelCode& code) {
  const std::uint64_t users = code.user_count();
  if (users < 2)
    throw std::invalid_argument("distance profile needs at least two users");
  const std::uint32_t n = code.n();
  DistanceProfile p;
  std::uint32_t d1 = n + 1, d2 = n + 1;
  for (std::uint64_t a = 0; a + 1 < users; ++a) {
    UserId ua = code.user_at(a);
    const std::uint8_t* ra = code.row_at(a).data();
    for (std::uint64_t b = a + 1; b < users; ++b) {
      UserId ub = code.user_at(b);
      bool cross_group = ua.group != ub.group;
      bool cross_member = ua.member != ub.member;
      if (!cross_group && !cross_member) continue;
      std::uint32_t d = kernels::hamming(ra, code.row_at(b).data(), n);
      if (cross_group && d < d1) d1 = d;
      if (cross_member && d < d2) d2 = d;
    }
  }
  p.d1_defined = code.m1() > 1;
  p.d2_defined = code.m2() > 1;
  p.d1 = p.d1_defined ? d1 : n + 1;
  p.d2 = p.d2_defined ? d2 : n + 1;
  if (!p.d1_defined && !p.d2_defined)
    throw std::invalid_argument("distance profile undefined for this shape");
  p.d = std::min(p.d1_defined ? p.d1 : UINT32_MAX,
                 p.d2_defined ? p.d2 : UINT32_MAX);
  return p;
}

std::map<std::vector<std::uint8_t>, std::uint64_t> column_type_counts(
    std::span<const Fingerprint> fps) {
  if (fps.empty())
    throw std::invalid_argument("column types need at least one fingerprint");
  const std::size_t n = fps.front().size();
  for (const auto& fp : fps)
    if (fp.size() != n || fp.q != fps.front().q)
      throw std::invalid_argument("fingerprints are not aligned");
  std::map<std::vector<std::uint8_t>, std::uint64_t> counts;
  std::vector<std::uint8_t> column(fps.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < fps.size(); ++t)
      column[t] = fps[t].symbols[i];
    ++counts[column];
  }
  return counts;
}

OffsetDiagnostics offset_pair_diagnostics(std::uint32_t n, std::uint32_t w,
                                          std::uint16_t q,
                                          std::uint64_t samples,
                                          std::uint64_t seed) {
  if (q < 2 || q > 256) throw std::invalid_argument("alphabet size out of range");
  if (w > n) throw std::invalid_argument("offset weight exceeds length");
  if (samples == 0) throw std::invalid_argument("need at least one sample");

  OffsetDiagnostics d;
  d.n = n;
  d.w = w;
  d.q = q;
  d.samples = samples;
  double omega = static_cast<double>(w) / n;
  d.theory_marginal = omega / (q - 1);
  d.theory_joint = d.theory_marginal * d.theory_marginal;

  d.marginal_counts.assign(n, std::vector<std::uint64_t>(q, 0));
  const std::uint32_t nz = q - 1u;
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t m = l + 1; m < n; ++m) d.pairs.emplace_back(l, m);
  d.joint_counts.assign(d.pairs.size(),
                        std::vector<std::uint64_t>(std::size_t(nz) * nz, 0));

  for (std::uint64_t s = 0; s < samples; ++s) {
    rng::Stream stream(seed, rng::Role::diagnostics, s);
    Fingerprint fp = sample_constant_weight(n, w, q, stream);
    for (std::uint32_t l = 0; l < n; ++l)
      ++d.marginal_counts[l][fp.symbols[l]];
    std::size_t pair = 0;
    for (std::uint32_t l = 0; l < n; ++l)
      for (std::uint32_t m = l + 1; m < n; ++m, ++pair) {
        std::uint8_t a = fp.symbols[l], b = fp.symbols[m];
        if (a != 0 && b != 0)
          ++d.joint_counts[pair][std::size_t(a - 1) * nz + (b - 1)];
      }
  }

  double inv = 1.0 / static_cast<double>(samples);
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t a = 1; a < q; ++a)
      d.max_abs_dev_marginal =
          std::max(d.max_abs_dev_marginal,
                   std::fabs(d.marginal_counts[l][a] * inv - d.theory_marginal));
  for (const auto& row : d.joint_counts)
    for (std::uint64_t c : row)
      d.max_abs_dev_joint =
          std::max(d.max_abs_dev_joint, std::fabs(c * inv - d.theory_joint));

  double p = d.theory_marginal;
  double eps = d.max_abs_dev_marginal;
  d.chebyshev_bound =
      eps > 0 ? p * (1 - p) / (eps * eps * static_cast<double>(samples)) : 0.0;
  return d;
}

}  // namespace fpcode
