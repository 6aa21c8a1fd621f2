#include "discord/dephasing.hpp"

#include <cmath>

#include <fmt/format.h>

namespace discord {
namespace {

// Squared HS distance below which a degenerate-basis dephasing counts as
// leaving the state untouched.
constexpr double kInvariantTol = 1e-24;

CMatrix lift(const CMatrix& basis, int dB) {
  return tensor_product(basis, CMatrix::Identity(dB, dB));
}

}  // namespace

DephasingBasis dephasing_basis(const DensityMatrix& rho) {
  validate_dims(rho.dims(), 2);
  const SpectralDecomposition local = eig_hermitian(partial_trace_b(rho.matrix(), rho.dims()));
  DephasingBasis basis;
  basis.vectors = local.eigenvectors;
  basis.eigenvalues = local.eigenvalues;
  const double threshold = degeneracy_threshold(local.eigenvalues);
  for (Eigen::Index i = 1; i < local.eigenvalues.size(); ++i) {
    if (local.eigenvalues(i) - local.eigenvalues(i - 1) < threshold) basis.degenerate = true;
  }
  basis.localStatePure = local.eigenvalues.maxCoeff() > 1.0 - tol::pure;
  return basis;
}

CMatrix dephase_in_basis(const CMatrix& rho, BipartiteDims dims, const CMatrix& basis) {
  validate_dims(dims);
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw DimensionMismatch("dephase_in_basis: operator does not match dims");
  }
  if (basis.rows() != dims.dA || basis.cols() != dims.dA) {
    throw DimensionMismatch("dephase_in_basis: basis must be dA x dA");
  }
  const int dB = dims.dB;
  const CMatrix w = lift(basis, dB);
  const CMatrix rotated = w.adjoint() * rho * w;
  CMatrix blocks = CMatrix::Zero(dims.total(), dims.total());
  for (int i = 0; i < dims.dA; ++i) {
    blocks.block(i * dB, i * dB, dB, dB) = rotated.block(i * dB, i * dB, dB, dB);
  }
  return w * blocks * w.adjoint();
}

DensityMatrix local_dephase(const DensityMatrix& rho, const DephasingBasis& basis,
                            DegeneracyPolicy policy) {
  const BipartiteDims dims = rho.dims();
  validate_dims(dims, 2);
  const double orthoDev =
      (basis.vectors.adjoint() * basis.vectors - CMatrix::Identity(dims.dA, dims.dA))
          .cwiseAbs()
          .maxCoeff();
  if (!(orthoDev < tol::unit)) throw InvalidArgument("local_dephase: basis is not orthonormal");

  CMatrix dephased = dephase_in_basis(rho.matrix(), dims, basis.vectors);
  if (basis.degenerate && !basis.localStatePure && policy == DegeneracyPolicy::Reject &&
      hs_norm_sq(rho.matrix() - dephased) >= kInvariantTol) {
    throw DegenerateLocalState(
        "local_dephase: reduced state rho_A is degenerate, its eigenbasis is not unique");
  }
  return DensityMatrix(std::move(dephased), dims);
}

DensityMatrix local_dephase(const DensityMatrix& rho, DegeneracyPolicy policy) {
  return local_dephase(rho, dephasing_basis(rho), policy);
}

double geometric_discord(const DensityMatrix& rho, DegeneracyPolicy policy) {
  const DensityMatrix dephased = local_dephase(rho, policy);
  return hs_norm_sq(rho.matrix() - dephased.matrix());
}

PurityDifference purity_difference_check(const DensityMatrix& rho, DegeneracyPolicy policy) {
  const DensityMatrix dephased = local_dephase(rho, policy);
  return {hs_norm_sq(rho.matrix() - dephased.matrix()), purity(rho) - purity(dephased)};
}

double generalized_concurrence(const DensityMatrix& rho) {
  validate_dims(rho.dims(), 2);
  const double p = purity(rho);
  if (!(p > 1.0 - tol::pure)) {
    throw NotPure(fmt::format("generalized_concurrence: state is mixed (purity {:.17g})", p));
  }
  const double local = hs_norm_sq(partial_trace_b(rho.matrix(), rho.dims()));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - local)));
}

DiscordLowerBounds discord_lower_bounds(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                        const UnitaryOperator& u) {
  const BipartiteDims dims = rho.dims();
  if (!(rhoPrime.dims() == dims) || !(u.dims() == dims)) {
    throw DimensionMismatch("discord_lower_bounds: operands have different dims");
  }
  const CMatrix delta = rho.matrix() - rhoPrime.matrix();
  const CMatrix reduced = partial_trace_b(u.matrix() * delta * u.matrix().adjoint(), dims);
  const double tn = trace_norm(reduced);
  return {tn * tn, hs_norm_sq(reduced) / static_cast<double>(dims.dA * dims.dB)};
}

DensityMatrix make_zero_discord_state(std::span<const double> probs,
                                      std::span<const DensityMatrix> states, int dA) {
  if (probs.empty() || probs.size() != states.size()) {
    throw InvalidArgument("make_zero_discord_state: need one local state per probability");
  }
  const int n = static_cast<int>(probs.size());
  if (dA == 0) dA = n;
  if (dA < n) throw InvalidArgument("make_zero_discord_state: dA smaller than probability count");

  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument("make_zero_discord_state: probabilities must be non-negative");
    }
    total += p;
  }
  if (!(std::abs(total - 1.0) < tol::trace)) {
    throw InvalidArgument(fmt::format("make_zero_discord_state: probabilities sum to {}", total));
  }

  const int dB = states.front().dim();
  const BipartiteDims dims{dA, dB};
  CMatrix out = CMatrix::Zero(dims.total(), dims.total());
  for (int i = 0; i < n; ++i) {
    if (states[i].dim() != dB) throw DimensionMismatch("make_zero_discord_state: mixed dB");
    out.block(i * dB, i * dB, dB, dB) = probs[i] * states[i].matrix();
  }
  return DensityMatrix(std::move(out), dims);
}

DensityMatrix schmidt_pair_state(double z, BipartiteDims dims) {
  validate_dims(dims, 2);
  if (dims.dB < 2) throw InvalidArgument("schmidt_pair_state: needs dB >= 2");
  if (!(z >= 0.0 && z <= 1.0)) throw InvalidArgument("schmidt_pair_state: z must lie in [0, 1]");
  CVector psi = CVector::Zero(dims.total());
  psi(0) = std::sqrt(z);
  psi(1 * dims.dB + 1) = std::sqrt(1.0 - z);
  return DensityMatrix::from_pure(psi, dims);
}

DensityMatrix schmidt_pair_reference(double z, BipartiteDims dims) {
  const DensityMatrix rho = schmidt_pair_state(z, dims);
  return DensityMatrix(dephase_in_basis(rho.matrix(), dims, CMatrix::Identity(dims.dA, dims.dA)),
                       dims);
}

}  // namespace discord
