// SPDX-License-Identifier: Apache-2.0
#include "fpcode/rng.hpp"

namespace fpcode::rng {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t seed, Role role, std::uint64_t a,
                         std::uint64_t b) noexcept {
  std::uint64_t k = mix64(seed ^ (static_cast<std::uint64_t>(role) * kGolden));
  k = mix64(k ^ (a + 1) * 0xd6e8feb86659fd93ULL);
  k = mix64(k ^ (b + 1) * 0xa0761d6478bd642fULL);
  return k;
}

std::uint64_t Stream::next() noexcept {
  return mix64(key_ ^ mix64(counter_++ * kGolden));
}

std::uint64_t Stream::bounded(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift; rejection keeps it exactly uniform.
  while (true) {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      if (lo < threshold) continue;
    }
    return static_cast<std::uint64_t>(m >> 64);
  }
}

double Stream::unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

}  // namespace fpcode::rng
