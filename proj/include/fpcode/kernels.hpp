// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>

namespace fpcode::kernels {

// Byte-vector inner loops behind a runtime-selected implementation table.
// The scalar variant is the reference; SIMD variants must match it exactly
// (integer results, so equality is bit-for-bit). Selection happens once from
// CPU feature detection; tests can force a backend to compare variants.

enum class Backend { scalar, avx2, neon };

// Currently active backend.
Backend active_backend() noexcept;
const char* backend_name() noexcept;

// Force a specific backend. Returns false (and leaves the table unchanged)
// if that backend is not compiled in or not supported by this CPU.
bool force_backend(Backend b) noexcept;

// Re-run auto-detection (scalar -> best available SIMD).
void reset_backend() noexcept;

// Number of positions where a and b differ.
std::uint32_t hamming(const std::uint8_t* a, const std::uint8_t* b,
                      std::size_t n) noexcept;

// Number of nonzero bytes.
std::uint32_t weight(const std::uint8_t* a, std::size_t n) noexcept;

// out[i] = (a[i] + b[i]) mod q, assuming a[i], b[i] < q. q in [2, 256].
void add_mod(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
             std::size_t n, unsigned q) noexcept;

// dists[r] = hamming(query, rows + r*n) for r in [0, m).
void hamming_rows(const std::uint8_t* query, const std::uint8_t* rows,
                  std::size_t m, std::size_t n, std::uint32_t* dists) noexcept;

// Implementation tables (internal; exposed for the dispatcher and tests).
struct Ops {
  std::uint32_t (*hamming)(const std::uint8_t*, const std::uint8_t*,
                           std::size_t) noexcept;
  std::uint32_t (*weight)(const std::uint8_t*, std::size_t) noexcept;
  void (*add_mod)(const std::uint8_t*, const std::uint8_t*, std::uint8_t*,
                  std::size_t, unsigned) noexcept;
};

const Ops& scalar_ops() noexcept;
#if defined(FPCODE_HAVE_AVX2_TU)
const Ops& avx2_ops() noexcept;
#endif
#if defined(FPCODE_HAVE_NEON_TU)
const Ops& neon_ops() noexcept;
#endif

}  // namespace fpcode::kernels
