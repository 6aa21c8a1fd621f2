// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only reached after a
// successful CPUID check in kernels::avx2().

#include "discord/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace discord::kernels {
namespace {

// One __m256d holds two complex doubles: (re0, im0, re1, im1).
inline __m256d load2(const cdouble* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cdouble* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m128d load1(const cdouble* p) { return _mm_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store1(cdouble* p, __m128d v) { _mm_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m128d cmul(__m128d a, __m128d b) {
  const __m128d b_re = _mm_movedup_pd(b);
  const __m128d b_im = _mm_permute_pd(b, 0x3);
  const __m128d a_sw = _mm_permute_pd(a, 0x1);
  return _mm_fmaddsub_pd(a, b_re, _mm_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq_avx2(std::span<const cdouble> x) {
  const std::size_t n = x.size();
  const cdouble* p = x.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a = load2(p + k);
    const __m256d b = load2(p + k + 2);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; k + 2 <= n; k += 2) {
    const __m256d a = load2(p + k);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) acc += p[k].real() * p[k].real() + p[k].imag() * p[k].imag();
  return acc;
}

void phase_modulate_avx2(std::span<const cdouble> in, std::span<const cdouble> phase,
                         std::span<cdouble> out) {
  const std::size_t n = phase.size();
  const cdouble* ph = phase.data();
  for (std::size_t c = 0; c < n; ++c) {
    const cdouble f = std::conj(ph[c]);
    const __m256d f2 = _mm256_setr_pd(f.real(), f.imag(), f.real(), f.imag());
    const cdouble* src = in.data() + c * n;
    cdouble* dst = out.data() + c * n;
    std::size_t r = 0;
    for (; r + 2 <= n; r += 2) {
      store2(dst + r, cmul(load2(src + r), cmul(load2(ph + r), f2)));
    }
    if (r < n) {
      const __m128d f1 = _mm256_castpd256_pd128(f2);
      store1(dst + r, cmul(load1(src + r), cmul(load1(ph + r), f1)));
    }
  }
}

void partial_trace_a_avx2(std::span<const cdouble> m, std::size_t dA, std::size_t dB,
                          std::span<cdouble> out) {
  const std::size_t d = dA * dB;
  for (std::size_t l = 0; l < dB; ++l) {
    cdouble* dst = out.data() + l * dB;
    std::size_t k = 0;
    for (; k + 2 <= dB; k += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t i = 0; i < dA; ++i) {
        acc = _mm256_add_pd(acc, load2(m.data() + (i * dB + l) * d + i * dB + k));
      }
      store2(dst + k, acc);
    }
    if (k < dB) {
      __m128d acc = _mm_setzero_pd();
      for (std::size_t i = 0; i < dA; ++i) {
        acc = _mm_add_pd(acc, load1(m.data() + (i * dB + l) * d + i * dB + k));
      }
      store1(dst + k, acc);
    }
  }
}

// The summed entries sit on a stride-(d+1) diagonal, so two lanes are filled
// from separate 128-bit loads.
void partial_trace_b_avx2(std::span<const cdouble> m, std::size_t dA, std::size_t dB,
                          std::span<cdouble> out) {
  const std::size_t d = dA * dB;
  const cdouble* base = m.data();
  for (std::size_t j = 0; j < dA; ++j) {
    for (std::size_t i = 0; i < dA; ++i) {
      const cdouble* p = base + (j * dB) * d + i * dB;
      __m256d acc = _mm256_setzero_pd();
      std::size_t k = 0;
      for (; k + 2 <= dB; k += 2) {
        const __m256d v = _mm256_set_m128d(load1(p + (k + 1) * (d + 1)), load1(p + k * (d + 1)));
        acc = _mm256_add_pd(acc, v);
      }
      __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
      if (k < dB) s = _mm_add_pd(s, load1(p + k * (d + 1)));
      store1(out.data() + j * dA + i, s);
    }
  }
}

constexpr KernelTable kAvx2{Isa::Avx2, norm_sq_avx2, phase_modulate_avx2, partial_trace_a_avx2,
                            partial_trace_b_avx2};

}  // namespace

const KernelTable* detail::avx2_table() noexcept { return &kAvx2; }

}  // namespace discord::kernels

#else

namespace discord::kernels {
const KernelTable* detail::avx2_table() noexcept { return nullptr; }
}  // namespace discord::kernels

#endif
