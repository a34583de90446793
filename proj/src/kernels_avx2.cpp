// SPDX-License-Identifier: Apache-2.0
#include <immintrin.h>

#include "fpcode/kernels.hpp"

namespace fpcode::kernels {

namespace {

std::uint32_t hamming_avx2(const std::uint8_t* a, const std::uint8_t* b,
                           std::size_t n) noexcept {
  std::uint32_t d = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i eq = _mm256_cmpeq_epi8(va, vb);
    std::uint32_t mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
    d += 32 - static_cast<std::uint32_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) d += (a[i] != b[i]);
  return d;
}

std::uint32_t weight_avx2(const std::uint8_t* a, std::size_t n) noexcept {
  std::uint32_t w = 0;
  std::size_t i = 0;
  const __m256i zero = _mm256_setzero_si256();
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i eq = _mm256_cmpeq_epi8(va, zero);
    std::uint32_t mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
    w += 32 - static_cast<std::uint32_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) w += (a[i] != 0);
  return w;
}

void add_mod_avx2(const std::uint8_t* a, const std::uint8_t* b,
                  std::uint8_t* out, std::size_t n, unsigned q) noexcept {
  std::size_t i = 0;
  if (q == 256) {
    for (; i + 32 <= n; i += 32) {
      __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                          _mm256_add_epi8(va, vb));
    }
  } else {
    // Lanes with a+b >= q need a - (q-b); others take the plain sum, which
    // cannot wrap because a+b < q <= 255 there.
    const __m256i vq = _mm256_set1_epi8(static_cast<char>(q));
    for (; i + 32 <= n; i += 32) {
      __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      __m256i qmb = _mm256_sub_epi8(vq, vb);  // q - b, in [1, q]
      // a >= q-b  <=>  max(a, q-b) == a  (unsigned compare)
      __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(va, qmb), va);
      __m256i wrapped = _mm256_sub_epi8(va, qmb);
      __m256i plain = _mm256_add_epi8(va, vb);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                          _mm256_blendv_epi8(plain, wrapped, ge));
    }
  }
  for (; i < n; ++i) {
    unsigned s = static_cast<unsigned>(a[i]) + b[i];
    out[i] = static_cast<std::uint8_t>(s >= q ? s - q : s);
  }
}

}  // namespace

const Ops& avx2_ops() noexcept {
  static const Ops ops{hamming_avx2, weight_avx2, add_mod_avx2};
  return ops;
}

}  // namespace fpcode::kernels
