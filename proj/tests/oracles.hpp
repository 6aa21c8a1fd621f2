#pragma once

// Brute-force reference computations for tests. Nothing here calls the
// library's kernels, partial traces or dephasing code.

#include <cmath>
#include <functional>
#include <random>

#include "discord/common.hpp"

namespace oracle {

using discord::BipartiteDims;
using discord::CMatrix;
using discord::Complex;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline CMatrix trace_b(const CMatrix& m, BipartiteDims d) {
  CMatrix out = CMatrix::Zero(d.dA, d.dA);
  for (int i = 0; i < d.dA; ++i)
    for (int j = 0; j < d.dA; ++j)
      for (int k = 0; k < d.dB; ++k) out(i, j) += m(i * d.dB + k, j * d.dB + k);
  return out;
}

inline CMatrix trace_a(const CMatrix& m, BipartiteDims d) {
  CMatrix out = CMatrix::Zero(d.dB, d.dB);
  for (int k = 0; k < d.dB; ++k)
    for (int l = 0; l < d.dB; ++l)
      for (int i = 0; i < d.dA; ++i) out(k, l) += m(i * d.dB + k, i * d.dB + l);
  return out;
}

// Tr(M^dagger M) via the explicit product.
inline double hs_sq(const CMatrix& m) { return (m.adjoint() * m).trace().real(); }

// sum_i Pi_i rho Pi_i, projectors built entry by entry.
inline CMatrix dephase(const CMatrix& rho, BipartiteDims d, const CMatrix& basis) {
  const int n = d.dA * d.dB;
  CMatrix out = CMatrix::Zero(n, n);
  for (int i = 0; i < d.dA; ++i) {
    CMatrix proj = CMatrix::Zero(n, n);
    for (int a = 0; a < d.dA; ++a)
      for (int b = 0; b < d.dA; ++b)
        for (int k = 0; k < d.dB; ++k)
          proj(a * d.dB + k, b * d.dB + k) = basis(a, i) * std::conj(basis(b, i));
    out += proj * rho * proj;
  }
  return out;
}

inline double witness(const CMatrix& delta, const CMatrix& u, BipartiteDims d) {
  return hs_sq(trace_b(u * delta * u.adjoint(), d));
}

inline double haar_mean_of_dim(double dB, int dA, double normSq) {
  const double a2 = static_cast<double>(dA) * dA;
  return (a2 * dB - dB) / (a2 * dB * dB - 1.0) * normSq;
}

// Bisection on the decreasing branch of mu(dB) for dB > 1/dA.
inline double invert_mean_bisect(double target, int dA, double normSq) {
  double lo = 1.0 / dA + 1e-12;
  double hi = 1e6;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (haar_mean_of_dim(mid, dA, normSq) > target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline CMatrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

inline CMatrix random_hermitian(int d, std::mt19937_64& rng) {
  const CMatrix g = random_complex(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

// Full-rank mixed state G G^dagger / Tr.
inline CMatrix random_density(int d, std::mt19937_64& rng) {
  const CMatrix g = random_complex(d, d, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline CMatrix random_pure(int d, std::mt19937_64& rng) {
  discord::CVector psi = random_complex(d, 1, rng).col(0);
  psi.normalize();
  return psi * psi.adjoint();
}

inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_complex(d, d, rng));
  return qr.householderQ() * CMatrix::Identity(d, d);
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
