// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace fpcode::rng {

// Counter-based deterministic generator. Every consumer derives its own
// stream key from (master seed, role tag, indices), so draws are positional:
// the value of draw k of stream (seed, role, i, j) never depends on what any
// other stream consumed. That is what makes generation parallelizable and
// worker-count independent while staying byte-reproducible.

enum class Role : std::uint64_t {
  center = 1,
  offset = 2,
  strategy = 3,
  trial = 4,
  diagnostics = 5,
  search = 6,
  test = 7,
};

// splitmix64 finalizer; full-avalanche 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Key derivation: absorbs role and indices into the master seed.
std::uint64_t derive_key(std::uint64_t seed, Role role, std::uint64_t a = 0,
                         std::uint64_t b = 0) noexcept;

class Stream {
 public:
  explicit Stream(std::uint64_t key) noexcept : key_(key) {}
  Stream(std::uint64_t seed, Role role, std::uint64_t a = 0,
         std::uint64_t b = 0) noexcept
      : key_(derive_key(seed, role, a, b)) {}

  // Raw 64-bit draw; output i is a pure function of (key, i).
  std::uint64_t next() noexcept;

  // Uniform on [0, bound). bound >= 1. Lemire multiply-shift with rejection,
  // so there is no modulo bias and the sequence is platform independent.
  std::uint64_t bounded(std::uint64_t bound) noexcept;

  // Uniform double on [0, 1) with 53 random bits.
  double unit() noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace fpcode::rng
