#pragma once

// Inner-loop kernels over contiguous column-major complex storage.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant compiled in a separate translation unit. The variant is
// picked once at runtime from CPUID. Kernel headers deliberately avoid Eigen so
// the AVX2 translation unit never instantiates Eigen templates with a
// different instruction set than the rest of the library.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace discord::kernels {

using cdouble = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  // Sum of |x_k|^2.
  double (*norm_sq)(std::span<const cdouble> x);

  // out(r, c) = in(r, c) * phase[r] * conj(phase[c]) for an n x n column-major
  // matrix, n = phase.size(). `in` and `out` may alias.
  void (*phase_modulate)(std::span<const cdouble> in, std::span<const cdouble> phase,
                         std::span<cdouble> out);

  // Partial trace over the A factor: out is dB x dB,
  // out(k, l) = sum_i m(i*dB + k, i*dB + l).
  void (*partial_trace_a)(std::span<const cdouble> m, std::size_t dA, std::size_t dB,
                          std::span<cdouble> out);

  // Partial trace over the B factor: out is dA x dA,
  // out(i, j) = sum_k m(i*dB + k, j*dB + k).
  void (*partial_trace_b)(std::span<const cdouble> m, std::size_t dA, std::size_t dB,
                          std::span<cdouble> out);
};

const KernelTable& scalar() noexcept;

// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2() noexcept;

// The table used by the library. Chosen on first call and fixed afterwards.
const KernelTable& active() noexcept;

namespace detail {
bool cpu_has_avx2_fma() noexcept;
const KernelTable* avx2_table() noexcept;
}  // namespace detail

}  // namespace discord::kernels
