// SPDX-License-Identifier: Apache-2.0
#include "fpcode/kernels.hpp"

namespace fpcode::kernels {

namespace {

std::uint32_t hamming_scalar(const std::uint8_t* a, const std::uint8_t* b,
                             std::size_t n) noexcept {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < n; ++i) d += (a[i] != b[i]);
  return d;
}

std::uint32_t weight_scalar(const std::uint8_t* a, std::size_t n) noexcept {
  std::uint32_t w = 0;
  for (std::size_t i = 0; i < n; ++i) w += (a[i] != 0);
  return w;
}

void add_mod_scalar(const std::uint8_t* a, const std::uint8_t* b,
                    std::uint8_t* out, std::size_t n, unsigned q) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    unsigned s = static_cast<unsigned>(a[i]) + b[i];
    out[i] = static_cast<std::uint8_t>(s >= q ? s - q : s);
  }
}

}  // namespace

const Ops& scalar_ops() noexcept {
  static const Ops ops{hamming_scalar, weight_scalar, add_mod_scalar};
  return ops;
}

}  // namespace fpcode::kernels
