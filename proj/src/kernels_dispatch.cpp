// SPDX-License-Identifier: Apache-2.0
#include <atomic>

#include "fpcode/kernels.hpp"

namespace fpcode::kernels {

namespace {

struct State {
  const Ops* ops;
  Backend backend;
};

State detect() noexcept {
#if defined(FPCODE_HAVE_AVX2_TU)
  if (__builtin_cpu_supports("avx2")) return {&avx2_ops(), Backend::avx2};
#endif
#if defined(FPCODE_HAVE_NEON_TU)
  // NEON is baseline on aarch64; the TU is only compiled there.
  return {&neon_ops(), Backend::neon};
#endif
  return {&scalar_ops(), Backend::scalar};
}

State g_state = detect();

}  // namespace

Backend active_backend() noexcept { return g_state.backend; }

const char* backend_name() noexcept {
  switch (g_state.backend) {
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
    default:
      return "scalar";
  }
}

bool force_backend(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      g_state = {&scalar_ops(), Backend::scalar};
      return true;
    case Backend::avx2:
#if defined(FPCODE_HAVE_AVX2_TU)
      if (__builtin_cpu_supports("avx2")) {
        g_state = {&avx2_ops(), Backend::avx2};
        return true;
      }
#endif
      return false;
    case Backend::neon:
#if defined(FPCODE_HAVE_NEON_TU)
      g_state = {&neon_ops(), Backend::neon};
      return true;
#else
      return false;
#endif
  }
  return false;
}

void reset_backend() noexcept { g_state = detect(); }

std::uint32_t hamming(const std::uint8_t* a, const std::uint8_t* b,
                      std::size_t n) noexcept {
  return g_state.ops->hamming(a, b, n);
}

std::uint32_t weight(const std::uint8_t* a, std::size_t n) noexcept {
  return g_state.ops->weight(a, n);
}

void add_mod(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
             std::size_t n, unsigned q) noexcept {
  g_state.ops->add_mod(a, b, out, n, q);
}

void hamming_rows(const std::uint8_t* query, const std::uint8_t* rows,
                  std::size_t m, std::size_t n,
                  std::uint32_t* dists) noexcept {
  auto fn = g_state.ops->hamming;
  for (std::size_t r = 0; r < m; ++r) dists[r] = fn(query, rows + r * n, n);
}

}  // namespace fpcode::kernels
