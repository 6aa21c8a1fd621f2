#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace discord {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double herm = 1e-10;   // max-entry deviation of M - M^dagger
inline constexpr double trace = 1e-10;  // |Tr M - 1|
inline constexpr double psd = 1e-9;     // smallest admissible eigenvalue is -psd
inline constexpr double unit = 1e-9;    // U^dagger U - I, column orthonormality
inline constexpr double recon = 1e-9;   // V diag(l) V^dagger vs. input
inline constexpr double degen = 1e-10;  // relative eigenvalue clustering threshold
inline constexpr double pure = 1e-10;   // local state counts as pure above 1 - pure
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A matrix failed the Hermiticity / trace / positivity / unitarity checks.
class InvalidOperator : public Error {
 public:
  using Error::Error;
};

class DegenerateLocalState : public Error {
 public:
  using Error::Error;
};

class NotPure : public Error {
 public:
  using Error::Error;
};

class NotTracePreserving : public Error {
 public:
  using Error::Error;
};

class TimeAverageZero : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

/// Dimensions of a bipartite Hilbert space H_A (x) H_B.
///
/// Composite basis index (i, k) with i in [0, dA) and k in [0, dB) maps to
/// i * dB + k (A-major ordering). Every module relies on this convention.
/// Reduced operators reuse the type with the traced factor set to 1.
struct BipartiteDims {
  int dA = 2;
  int dB = 1;

  constexpr int total() const noexcept { return dA * dB; }
  friend constexpr bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Throws InvalidArgument unless dA >= minA and dB >= 1.
void validate_dims(BipartiteDims dims, int minA = 1);

/// Largest |M(i,j) - conj(M(j,i))|.
double hermiticity_deviation(const CMatrix& m);

}  // namespace discord
