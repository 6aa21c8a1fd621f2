#include "discord/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "discord/kernels.hpp"

namespace discord {
namespace {

std::span<const kernels::cdouble> view(const CMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

void require_square(const CMatrix& m, BipartiteDims dims, const char* what) {
  validate_dims(dims);
  if (m.rows() != m.cols() || m.rows() != dims.total()) {
    throw DimensionMismatch(fmt::format("{}: matrix is {}x{}, dims {}x{} require {}x{}", what,
                                        m.rows(), m.cols(), dims.dA, dims.dB, dims.total(),
                                        dims.total()));
  }
}

// Re-Hermitize if within tolerance, otherwise reject.
CMatrix hermitized(CMatrix m, const char* what) {
  const double dev = hermiticity_deviation(m);
  if (!(dev < tol::herm)) {
    throw InvalidOperator(fmt::format("{}: not Hermitian (deviation {:.3e})", what, dev));
  }
  if (dev > 0.0) m = (0.5 * (m + m.adjoint())).eval();
  return m;
}

double max_identity_deviation(const CMatrix& gram) {
  const CMatrix diff = gram - CMatrix::Identity(gram.rows(), gram.cols());
  return diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
}

int largest_component(const CVector& v) {
  int best = 0;
  double bestAbs = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > bestAbs) {
      bestAbs = a;
      best = i;
    }
  }
  return best;
}

}  // namespace

void validate_dims(BipartiteDims dims, int minA) {
  if (dims.dA < minA || dims.dB < 1) {
    throw InvalidArgument(
        fmt::format("invalid dimensions {}x{} (need dA >= {}, dB >= 1)", dims.dA, dims.dB, minA));
  }
}

double hermiticity_deviation(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(CMatrix matrix, BipartiteDims dims) : dims_(dims) {
  require_square(matrix, dims, "DensityMatrix");
  matrix_ = hermitized(std::move(matrix), "DensityMatrix");
  const double tr = matrix_.trace().real();
  if (!(std::abs(tr - 1.0) < tol::trace)) {
    throw InvalidOperator(fmt::format("DensityMatrix: trace {:.17g} differs from 1", tr));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues()(0);
  if (!(lowest >= -tol::psd)) {
    throw InvalidOperator(fmt::format("DensityMatrix: negative eigenvalue {:.3e}", lowest));
  }
}

DensityMatrix DensityMatrix::from_pure(const CVector& psi, BipartiteDims dims) {
  return DensityMatrix(psi * psi.adjoint(), dims);
}

DensityMatrix DensityMatrix::maximally_mixed(BipartiteDims dims) {
  validate_dims(dims);
  const int d = dims.total();
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d), dims);
}

HermitianOperator::HermitianOperator(CMatrix matrix, BipartiteDims dims) : dims_(dims) {
  require_square(matrix, dims, "HermitianOperator");
  matrix_ = hermitized(std::move(matrix), "HermitianOperator");
}

UnitaryOperator::UnitaryOperator(CMatrix matrix, BipartiteDims dims)
    : matrix_(std::move(matrix)), dims_(dims) {
  require_square(matrix_, dims, "UnitaryOperator");
  const double dev = max_identity_deviation(matrix_.adjoint() * matrix_);
  if (!(dev < tol::unit)) {
    throw InvalidOperator(fmt::format("UnitaryOperator: U^dagger U deviates by {:.3e}", dev));
  }
}

UnitaryOperator UnitaryOperator::identity(BipartiteDims dims) {
  validate_dims(dims);
  return UnitaryOperator(CMatrix::Identity(dims.total(), dims.total()), dims);
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix partial_trace_b(const CMatrix& m, BipartiteDims dims) {
  require_square(m, dims, "partial_trace_b");
  CMatrix out(dims.dA, dims.dA);
  kernels::active().partial_trace_b(view(m), dims.dA, dims.dB,
                                    {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

CMatrix partial_trace_a(const CMatrix& m, BipartiteDims dims) {
  require_square(m, dims, "partial_trace_a");
  CMatrix out(dims.dB, dims.dB);
  kernels::active().partial_trace_a(view(m), dims.dA, dims.dB,
                                    {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

DensityMatrix partial_trace_B(const DensityMatrix& rho) {
  return DensityMatrix(partial_trace_b(rho.matrix(), rho.dims()), {rho.dims().dA, 1});
}

DensityMatrix partial_trace_A(const DensityMatrix& rho) {
  return DensityMatrix(partial_trace_a(rho.matrix(), rho.dims()), {1, rho.dims().dB});
}

// For Hermitian rho, Tr(rho^2) is the sum of squared moduli.
double purity(const DensityMatrix& rho) { return hs_norm_sq(rho.matrix()); }

double hs_norm_sq(const CMatrix& m) { return kernels::active().norm_sq(view(m)); }

double trace_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double degeneracy_threshold(const RVector& ascendingEigenvalues) {
  if (ascendingEigenvalues.size() == 0) return tol::degen;
  const double range =
      ascendingEigenvalues(ascendingEigenvalues.size() - 1) - ascendingEigenvalues(0);
  return tol::degen * std::max(range, 1.0);
}

SpectralDecomposition eig_hermitian(const CMatrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatch(fmt::format("eig_hermitian: {}x{} is not square", h.rows(), h.cols()));
  }
  const CMatrix herm = hermitized(h, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  if (solver.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver did not converge");

  const RVector& values = solver.eigenvalues();
  const CMatrix& vectors = solver.eigenvectors();
  const int n = static_cast<int>(values.size());
  const double threshold = degeneracy_threshold(values);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> peak(n);
  for (int i = 0; i < n; ++i) peak[i] = largest_component(vectors.col(i));

  for (int start = 0; start < n;) {
    int end = start + 1;
    while (end < n && values(end) - values(end - 1) < threshold) ++end;
    std::stable_sort(order.begin() + start, order.begin() + end,
                     [&](int a, int b) { return peak[a] < peak[b]; });
    start = end;
  }

  SpectralDecomposition out{RVector(n), CMatrix(n, n)};
  for (int i = 0; i < n; ++i) {
    const int src = order[i];
    out.eigenvalues(i) = values(src);
    const Complex pivot = vectors(peak[src], src);
    const Complex phase = std::abs(pivot) > 0.0 ? std::conj(pivot) / std::abs(pivot) : 1.0;
    out.eigenvectors.col(i) = vectors.col(src) * phase;
  }
  return out;
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h) { return eig_hermitian(h.matrix()); }

UnitaryOperator propagator(const SpectralDecomposition& spectrum, BipartiteDims dims, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("propagator: time must be finite");
  const Eigen::Index n = spectrum.eigenvalues.size();
  CVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::polar(1.0, -spectrum.eigenvalues(i) * t);
  const CMatrix& v = spectrum.eigenvectors;
  return UnitaryOperator(v * phases.asDiagonal() * v.adjoint(), dims);
}

UnitaryOperator propagator(const HermitianOperator& h, double t) {
  return propagator(eig_hermitian(h), h.dims(), t);
}

DensityMatrix evolve(const DensityMatrix& rho, const UnitaryOperator& u) {
  if (!(rho.dims() == u.dims())) throw DimensionMismatch("evolve: state and unitary dims differ");
  return DensityMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint(), rho.dims());
}

}  // namespace discord
