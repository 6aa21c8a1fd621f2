#pragma once

#include "discord/common.hpp"

namespace discord {

/// A validated density operator on H_A (x) H_B.
///
/// Construction checks Hermiticity, unit trace and positivity. Inputs whose
/// Hermiticity defect is below tol::herm are re-Hermitized as (M + M^dagger)/2
/// so rounding does not accumulate over long chains of operations.
class DensityMatrix {
 public:
  /// Throws InvalidOperator or DimensionMismatch.
  DensityMatrix(CMatrix matrix, BipartiteDims dims);

  /// |psi><psi| for a normalized state vector.
  static DensityMatrix from_pure(const CVector& psi, BipartiteDims dims);

  /// I / d.
  static DensityMatrix maximally_mixed(BipartiteDims dims);

  const CMatrix& matrix() const noexcept { return matrix_; }
  BipartiteDims dims() const noexcept { return dims_; }
  int dim() const noexcept { return dims_.total(); }

 private:
  CMatrix matrix_;
  BipartiteDims dims_;
};

class HermitianOperator {
 public:
  HermitianOperator(CMatrix matrix, BipartiteDims dims);

  const CMatrix& matrix() const noexcept { return matrix_; }
  BipartiteDims dims() const noexcept { return dims_; }

 private:
  CMatrix matrix_;
  BipartiteDims dims_;
};

class UnitaryOperator {
 public:
  UnitaryOperator(CMatrix matrix, BipartiteDims dims);

  static UnitaryOperator identity(BipartiteDims dims);

  const CMatrix& matrix() const noexcept { return matrix_; }
  BipartiteDims dims() const noexcept { return dims_; }

 private:
  CMatrix matrix_;
  BipartiteDims dims_;
};

/// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

/// Kronecker product; (a (x) b)[(i,k),(j,l)] = a[i,j] * b[k,l] with A-major
/// composite indices.
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);

/// Tr_B of an arbitrary d x d operator; returns dA x dA.
CMatrix partial_trace_b(const CMatrix& m, BipartiteDims dims);
/// Tr_A of an arbitrary d x d operator; returns dB x dB.
CMatrix partial_trace_a(const CMatrix& m, BipartiteDims dims);

/// Reduced state of A, tagged {dA, 1}.
DensityMatrix partial_trace_B(const DensityMatrix& rho);
/// Reduced state of B, tagged {1, dB}.
DensityMatrix partial_trace_A(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

/// Tr(M^dagger M).
double hs_norm_sq(const CMatrix& m);

/// Sum of singular values.
double trace_norm(const CMatrix& m);

/// Hermitian eigendecomposition with deterministic ordering.
///
/// Eigenvalues are ascending. Inside a cluster of eigenvalues closer than
/// tol::degen * max(spectral range, 1) the vectors are ordered by the index of
/// their largest-modulus component, and every vector is rephased so that
/// component is real and positive.
SpectralDecomposition eig_hermitian(const HermitianOperator& h);
/// Same, for a raw matrix. Throws InvalidOperator when not Hermitian within tol::herm.
SpectralDecomposition eig_hermitian(const CMatrix& h);

/// Absolute clustering threshold used by eig_hermitian for the given spectrum.
double degeneracy_threshold(const RVector& ascendingEigenvalues);

/// exp(-i H t) from the spectral decomposition of H.
UnitaryOperator propagator(const HermitianOperator& h, double t);
UnitaryOperator propagator(const SpectralDecomposition& spectrum, BipartiteDims dims, double t);

/// U rho U^dagger.
DensityMatrix evolve(const DensityMatrix& rho, const UnitaryOperator& u);

}  // namespace discord
