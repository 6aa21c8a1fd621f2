#include "discord/kernels.hpp"

namespace discord::kernels {
namespace {

// Explicit real arithmetic; std::complex operator* goes through the
// Annex G NaN-recovery path without -ffast-math.
inline cdouble mul(cdouble a, cdouble b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.imag() * b.real() + a.real() * b.imag()};
}

double norm_sq_scalar(std::span<const cdouble> x) {
  double acc = 0.0;
  for (const cdouble& z : x) acc += z.real() * z.real() + z.imag() * z.imag();
  return acc;
}

void phase_modulate_scalar(std::span<const cdouble> in, std::span<const cdouble> phase,
                           std::span<cdouble> out) {
  const std::size_t n = phase.size();
  for (std::size_t c = 0; c < n; ++c) {
    const cdouble f = std::conj(phase[c]);
    for (std::size_t r = 0; r < n; ++r) {
      out[c * n + r] = mul(in[c * n + r], mul(phase[r], f));
    }
  }
}

void partial_trace_a_scalar(std::span<const cdouble> m, std::size_t dA, std::size_t dB,
                            std::span<cdouble> out) {
  const std::size_t d = dA * dB;
  for (std::size_t l = 0; l < dB; ++l) {
    for (std::size_t k = 0; k < dB; ++k) out[l * dB + k] = 0.0;
    for (std::size_t i = 0; i < dA; ++i) {
      const cdouble* col = m.data() + (i * dB + l) * d + i * dB;
      for (std::size_t k = 0; k < dB; ++k) out[l * dB + k] += col[k];
    }
  }
}

void partial_trace_b_scalar(std::span<const cdouble> m, std::size_t dA, std::size_t dB,
                            std::span<cdouble> out) {
  const std::size_t d = dA * dB;
  for (std::size_t j = 0; j < dA; ++j) {
    for (std::size_t i = 0; i < dA; ++i) {
      cdouble acc = 0.0;
      for (std::size_t k = 0; k < dB; ++k) acc += m[(j * dB + k) * d + i * dB + k];
      out[j * dA + i] = acc;
    }
  }
}

constexpr KernelTable kScalar{Isa::Scalar, norm_sq_scalar, phase_modulate_scalar,
                              partial_trace_a_scalar, partial_trace_b_scalar};

}  // namespace

const KernelTable& scalar() noexcept { return kScalar; }

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2() noexcept {
  return detail::cpu_has_avx2_fma() ? detail::avx2_table() : nullptr;
}

const KernelTable& active() noexcept {
  static const KernelTable& table = [] () -> const KernelTable& {
    const KernelTable* fast = avx2();
    return fast != nullptr ? *fast : scalar();
  }();
  return table;
}

bool detail::cpu_has_avx2_fma() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace discord::kernels
