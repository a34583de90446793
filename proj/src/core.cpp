// SPDX-License-Identifier: Apache-2.0
#include "fpcode/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fpcode/kernels.hpp"

namespace fpcode {

void validate_fingerprint(const Fingerprint& fp) {
  if (fp.q < 2 || fp.q > 256)
    throw std::invalid_argument("alphabet size must be in [2, 256], got " +
                                std::to_string(fp.q));
  for (std::uint8_t s : fp.symbols)
    if (s >= fp.q)
      throw std::invalid_argument("symbol " + std::to_string(s) +
                                  " out of range for q=" +
                                  std::to_string(fp.q));
}

TwoLevelCode::TwoLevelCode(std::uint16_t q, std::uint32_t n, std::uint32_t m1,
                           std::uint32_t m2, std::vector<std::uint8_t> flat,
                           std::optional<Provenance> prov)
    : q_(q), n_(n), m1_(m1), m2_(m2), flat_(std::move(flat)),
      provenance_(std::move(prov)) {
  if (q < 2 || q > 256) throw std::invalid_argument("alphabet size out of range");
  if (n == 0) throw std::invalid_argument("code length must be positive");
  if (m1 == 0 || m2 == 0)
    throw std::invalid_argument("group and member counts must be positive");
  if (flat_.size() != static_cast<std::size_t>(m1) * m2 * n)
    throw std::invalid_argument("codeword storage size mismatch");
  for (std::uint8_t s : flat_)
    if (s >= q) throw std::invalid_argument("codeword symbol out of range");
  if (provenance_ &&
      provenance_->centers.size() != static_cast<std::size_t>(m1) * n)
    throw std::invalid_argument("provenance centers size mismatch");
}

Fingerprint TwoLevelCode::fingerprint(UserId u) const {
  auto r = row(u);
  return Fingerprint{q_, std::vector<std::uint8_t>(r.begin(), r.end())};
}

RatePair TwoLevelCode::rates() const {
  double lq = std::log(static_cast<double>(q_));
  return {std::log(static_cast<double>(m1_)) / (lq * n_),
          std::log(static_cast<double>(m2_)) / (lq * n_)};
}

namespace {
void check_compatible(const Fingerprint& a, const Fingerprint& b) {
  if (a.q != b.q)
    throw std::invalid_argument("fingerprints have different alphabets");
  if (a.symbols.size() != b.symbols.size())
    throw std::invalid_argument("fingerprints have different lengths");
}
}  // namespace

std::uint32_t hamming_distance(const Fingerprint& a, const Fingerprint& b) {
  check_compatible(a, b);
  return kernels::hamming(a.data(), b.data(), a.size());
}

std::uint32_t weight(const Fingerprint& a) {
  return kernels::weight(a.data(), a.size());
}

Fingerprint add_mod_q(const Fingerprint& a, const Fingerprint& b) {
  check_compatible(a, b);
  Fingerprint out{a.q, std::vector<std::uint8_t>(a.size())};
  kernels::add_mod(a.data(), b.data(), out.symbols.data(), a.size(), a.q);
  return out;
}

Fingerprint sub_mod_q(const Fingerprint& a, const Fingerprint& b) {
  check_compatible(a, b);
  // a - b = a + (q - b) mod q, lane by lane.
  Fingerprint negb{b.q, std::vector<std::uint8_t>(b.size())};
  for (std::size_t i = 0; i < b.size(); ++i)
    negb.symbols[i] =
        static_cast<std::uint8_t>(b.symbols[i] == 0 ? 0 : b.q - b.symbols[i]);
  return add_mod_q(a, negb);
}

std::uint32_t dist_to_set(const Fingerprint& y,
                          std::span<const Fingerprint> set) {
  if (set.empty()) throw std::invalid_argument("distance to an empty set");
  std::uint32_t best = UINT32_MAX;
  for (const auto& fp : set) {
    std::uint32_t d = hamming_distance(y, fp);
    if (d < best) best = d;
  }
  return best;
}

}  // namespace fpcode
