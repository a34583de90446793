// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fpcode {

// Symbols are bytes; the alphabet is Z_q = {0, .., q-1} with q in [2, 256].
// All indices are 0-based internally; serialization adds 1 at the boundary.

struct Fingerprint {
  std::uint16_t q = 0;
  std::vector<std::uint8_t> symbols;

  std::size_t size() const noexcept { return symbols.size(); }
  const std::uint8_t* data() const noexcept { return symbols.data(); }
  bool operator==(const Fingerprint&) const = default;
};

// Validates q in [2,256] and every symbol < q; throws std::invalid_argument.
void validate_fingerprint(const Fingerprint& fp);

struct UserId {
  std::uint32_t group = 0;
  std::uint32_t member = 0;
  auto operator<=>(const UserId&) const = default;
};

// Base-q logarithmic rate pair ((1/n) log_q M1, (1/n) log_q M2).
struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

struct Provenance {
  double omega = 0.0;
  std::uint32_t w = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> centers;  // m1 rows of n symbols

  bool operator==(const Provenance&) const = default;
};

class TwoLevelCode {
 public:
  TwoLevelCode() = default;
  // Takes ownership of flat storage: user (g, m) occupies row g*m2 + m.
  TwoLevelCode(std::uint16_t q, std::uint32_t n, std::uint32_t m1,
               std::uint32_t m2, std::vector<std::uint8_t> flat,
               std::optional<Provenance> prov = std::nullopt);

  std::uint16_t q() const noexcept { return q_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t m1() const noexcept { return m1_; }
  std::uint32_t m2() const noexcept { return m2_; }
  std::uint64_t user_count() const noexcept {
    return static_cast<std::uint64_t>(m1_) * m2_;
  }

  std::uint64_t user_index(UserId u) const noexcept {
    return static_cast<std::uint64_t>(u.group) * m2_ + u.member;
  }
  UserId user_at(std::uint64_t index) const noexcept {
    return {static_cast<std::uint32_t>(index / m2_),
            static_cast<std::uint32_t>(index % m2_)};
  }

  std::span<const std::uint8_t> row(UserId u) const noexcept {
    return {flat_.data() + user_index(u) * n_, n_};
  }
  std::span<const std::uint8_t> row_at(std::uint64_t index) const noexcept {
    return {flat_.data() + index * n_, n_};
  }
  Fingerprint fingerprint(UserId u) const;

  const std::vector<std::uint8_t>& flat() const noexcept { return flat_; }
  const std::optional<Provenance>& provenance() const noexcept {
    return provenance_;
  }

  RatePair rates() const;

  bool operator==(const TwoLevelCode&) const = default;

 private:
  std::uint16_t q_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t m1_ = 0;
  std::uint32_t m2_ = 0;
  std::vector<std::uint8_t> flat_;
  std::optional<Provenance> provenance_;
};

// Hamming distance; operands must share q and length.
std::uint32_t hamming_distance(const Fingerprint& a, const Fingerprint& b);

// Number of nonzero symbols.
std::uint32_t weight(const Fingerprint& a);

// Componentwise (a + b) mod q and (a - b) mod q.
Fingerprint add_mod_q(const Fingerprint& a, const Fingerprint& b);
Fingerprint sub_mod_q(const Fingerprint& a, const Fingerprint& b);

// Minimum distance from y to a nonempty set of fingerprints.
std::uint32_t dist_to_set(const Fingerprint& y,
                          std::span<const Fingerprint> set);

}  // namespace fpcode
