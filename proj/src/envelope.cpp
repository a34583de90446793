// SPDX-License-Identifier: Apache-2.0
#include "fpcode/envelope.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpcode {

namespace detail {

void validate_coalition(std::span<const Fingerprint> fps) {
  if (fps.empty())
    throw std::invalid_argument("coalition must have at least one member");
  const auto& first = fps.front();
  validate_fingerprint(first);
  for (const auto& fp : fps)
    if (fp.q != first.q || fp.size() != first.size())
      throw std::invalid_argument("coalition fingerprints are not aligned");
}

std::uint64_t envelope_size_capped(
    const std::vector<std::vector<std::uint8_t>>& sets) {
  constexpr std::uint64_t kCap = 1ull << 63;
  std::uint64_t size = 1;
  for (const auto& s : sets) {
    if (size > kCap / s.size()) return kCap;
    size *= s.size();
  }
  return size;
}

}  // namespace detail

std::vector<std::uint32_t> detectable_positions(
    std::span<const Fingerprint> fps) {
  detail::validate_coalition(fps);
  std::vector<std::uint32_t> out;
  const std::size_t n = fps.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t s0 = fps.front().symbols[i];
    for (std::size_t t = 1; t < fps.size(); ++t)
      if (fps[t].symbols[i] != s0) {
        out.push_back(static_cast<std::uint32_t>(i));
        break;
      }
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> envelope_column_sets(
    std::span<const Fingerprint> fps) {
  detail::validate_coalition(fps);
  const std::size_t n = fps.front().size();
  std::vector<std::vector<std::uint8_t>> sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = sets[i];
    for (const auto& fp : fps) s.push_back(fp.symbols[i]);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return sets;
}

bool envelope_contains(std::span<const Fingerprint> fps,
                       const Fingerprint& y) {
  detail::validate_coalition(fps);
  if (y.q != fps.front().q || y.size() != fps.front().size())
    throw std::invalid_argument("forgery is not aligned with the coalition");
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool hit = false;
    for (const auto& fp : fps)
      if (fp.symbols[i] == y.symbols[i]) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

std::string envelope_size(std::span<const Fingerprint> fps) {
  auto sets = envelope_column_sets(fps);
  boost::multiprecision::cpp_int size = 1;
  for (const auto& s : sets) size *= static_cast<unsigned>(s.size());
  return size.str();
}

}  // namespace fpcode
