// SPDX-License-Identifier: Apache-2.0
#include <arm_neon.h>

#include "fpcode/kernels.hpp"

namespace fpcode::kernels {

namespace {

std::uint32_t hamming_neon(const std::uint8_t* a, const std::uint8_t* b,
                           std::size_t n) noexcept {
  std::uint32_t d = 0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint8x16_t va = vld1q_u8(a + i);
    uint8x16_t vb = vld1q_u8(b + i);
    // 0xFF where unequal; normalize to 1 per mismatched lane and sum.
    uint8x16_t ne = vmvnq_u8(vceqq_u8(va, vb));
    d += vaddvq_u8(vshrq_n_u8(ne, 7));
  }
  for (; i < n; ++i) d += (a[i] != b[i]);
  return d;
}

std::uint32_t weight_neon(const std::uint8_t* a, std::size_t n) noexcept {
  std::uint32_t w = 0;
  std::size_t i = 0;
  const uint8x16_t zero = vdupq_n_u8(0);
  for (; i + 16 <= n; i += 16) {
    uint8x16_t va = vld1q_u8(a + i);
    uint8x16_t nz = vmvnq_u8(vceqq_u8(va, zero));
    w += vaddvq_u8(vshrq_n_u8(nz, 7));
  }
  for (; i < n; ++i) w += (a[i] != 0);
  return w;
}

void add_mod_neon(const std::uint8_t* a, const std::uint8_t* b,
                  std::uint8_t* out, std::size_t n, unsigned q) noexcept {
  std::size_t i = 0;
  if (q == 256) {
    for (; i + 16 <= n; i += 16)
      vst1q_u8(out + i, vaddq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
  } else {
    const uint8x16_t vq = vdupq_n_u8(static_cast<std::uint8_t>(q));
    for (; i + 16 <= n; i += 16) {
      uint8x16_t va = vld1q_u8(a + i);
      uint8x16_t vb = vld1q_u8(b + i);
      uint8x16_t qmb = vsubq_u8(vq, vb);
      uint8x16_t ge = vcgeq_u8(va, qmb);
      uint8x16_t wrapped = vsubq_u8(va, qmb);
      uint8x16_t plain = vaddq_u8(va, vb);
      vst1q_u8(out + i, vbslq_u8(ge, wrapped, plain));
    }
  }
  for (; i < n; ++i) {
    unsigned s = static_cast<unsigned>(a[i]) + b[i];
    out[i] = static_cast<std::uint8_t>(s >= q ? s - q : s);
  }
}

}  // namespace

const Ops& neon_ops() noexcept {
  static const Ops ops{hamming_neon, weight_neon, add_mod_neon};
  return ops;
}

}  // namespace fpcode::kernels
