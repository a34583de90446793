// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "fpcode/core.hpp"

namespace fpcode {

// Refusal for operations whose enumeration cost exceeds the caller's limit;
// carries the estimate so the caller can decide what to do.
struct WorkLimitError : std::runtime_error {
  WorkLimitError(const std::string& what, double estimate)
      : std::runtime_error(what), estimated_work(estimate) {}
  double estimated_work;
};

// Coordinates (0-based) where the coalition's fingerprints disagree. On the
// remaining coordinates every admissible forgery is forced to the common
// symbol.
std::vector<std::uint32_t> detectable_positions(
    std::span<const Fingerprint> fps);

// Sorted distinct symbols seen in each coordinate; the forgery envelope is
// the cartesian product of these per-coordinate sets.
std::vector<std::vector<std::uint8_t>> envelope_column_sets(
    std::span<const Fingerprint> fps);

bool envelope_contains(std::span<const Fingerprint> fps,
                       const Fingerprint& y);

// Exact envelope cardinality, decimal string (it can exceed 2^64).
std::string envelope_size(std::span<const Fingerprint> fps);

namespace detail {
// Saturating product of column set sizes, capped at 2^63.
std::uint64_t envelope_size_capped(
    const std::vector<std::vector<std::uint8_t>>& sets);
void validate_coalition(std::span<const Fingerprint> fps);
}  // namespace detail

// Visits every envelope element exactly once in lexicographic order (first
// coordinate most significant). The visited fingerprint is a reusable
// buffer; copy it if it must outlive the call. A visitor returning bool can
// stop early by returning false. Refuses with WorkLimitError if the
// envelope has more than `limit` elements.
template <class Visitor>
void envelope_enumerate(std::span<const Fingerprint> fps, Visitor&& visit,
                        std::uint64_t limit = (1ull << 24)) {
  detail::validate_coalition(fps);
  auto sets = envelope_column_sets(fps);
  std::uint64_t size = detail::envelope_size_capped(sets);
  if (size > limit)
    throw WorkLimitError("envelope enumeration would visit " +
                             std::to_string(size) + " elements, limit " +
                             std::to_string(limit),
                         static_cast<double>(size));
  const std::size_t n = sets.size();
  Fingerprint y{fps.front().q, std::vector<std::uint8_t>(n)};
  std::vector<std::size_t> pos(n, 0);
  for (std::size_t i = 0; i < n; ++i) y.symbols[i] = sets[i][0];
  while (true) {
    if constexpr (std::is_convertible_v<
                      decltype(visit(static_cast<const Fingerprint&>(y))),
                      bool>) {
      if (!visit(static_cast<const Fingerprint&>(y))) return;
    } else {
      visit(static_cast<const Fingerprint&>(y));
    }
    // Odometer increment, last coordinate fastest.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < sets[i].size()) {
        y.symbols[i] = sets[i][pos[i]];
        break;
      }
      pos[i] = 0;
      y.symbols[i] = sets[i][0];
      if (i == 0) return;
    }
    if (n == 0) return;  // length-0 envelope has the single empty element
  }
}

}  // namespace fpcode
