#pragma once

#include <span>
#include <vector>

#include "discord/quantum_core.hpp"

namespace discord {

/// Eigenbasis of the reduced state rho_A used for local dephasing.
struct DephasingBasis {
  CMatrix vectors;      // dA x dA, orthonormal columns
  RVector eigenvalues;  // the local populations p_i, ascending
  bool degenerate = false;
  bool localStatePure = false;
};

/// How local_dephase treats a degenerate rho_A, whose eigenbasis is not unique.
enum class DegeneracyPolicy {
  Reject,            // throw DegenerateLocalState when the choice of basis matters
  UseTieBrokenBasis  // dephase in the deterministic basis from eig_hermitian
};

DephasingBasis dephasing_basis(const DensityMatrix& rho);

/// sum_i Pi_i rho Pi_i with Pi_i = |i><i| (x) I_B for the columns |i> of `basis`.
/// No eigenbasis requirement: any orthonormal A-basis is accepted.
CMatrix dephase_in_basis(const CMatrix& rho, BipartiteDims dims, const CMatrix& basis);

/// Local dephasing in the eigenbasis of rho_A.
///
/// Under DegeneracyPolicy::Reject a degenerate rho_A is an error unless the
/// result cannot depend on the basis: a pure rho_A (product state), or a state
/// already left invariant by the tie-broken basis, which certifies zero discord.
DensityMatrix local_dephase(const DensityMatrix& rho, const DephasingBasis& basis,
                            DegeneracyPolicy policy = DegeneracyPolicy::Reject);
DensityMatrix local_dephase(const DensityMatrix& rho,
                            DegeneracyPolicy policy = DegeneracyPolicy::Reject);

/// ||rho - rho'||^2 in the squared Hilbert-Schmidt norm.
double geometric_discord(const DensityMatrix& rho,
                         DegeneracyPolicy policy = DegeneracyPolicy::Reject);

struct PurityDifference {
  double lhs;  // ||rho - rho'||^2
  double rhs;  // P(rho) - P(rho')
};

PurityDifference purity_difference_check(const DensityMatrix& rho,
                                         DegeneracyPolicy policy = DegeneracyPolicy::Reject);

/// sqrt(2 (1 - Tr rho_A^2)); throws NotPure for mixed input.
double generalized_concurrence(const DensityMatrix& rho);

struct DiscordLowerBounds {
  double traceNormBound;  // ||Tr_B{U Delta U^dagger}||_1^2, bounded by ||Delta||_1^2
  double hsBound;         // ||Tr_B{U Delta U^dagger}||^2 / (dA dB), bounded by D(rho)
};

DiscordLowerBounds discord_lower_bounds(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                        const UnitaryOperator& u);

/// sum_i p_i |i><i| (x) rho_B^i in the computational A-basis. `dA` defaults to
/// probs.size(); larger values pad with zero-weight basis states.
DensityMatrix make_zero_discord_state(std::span<const double> probs,
                                      std::span<const DensityMatrix> states, int dA = 0);

/// |psi_z> = sqrt(z)|00> + sqrt(1-z)|11> as a density matrix.
DensityMatrix schmidt_pair_state(double z, BipartiteDims dims = {2, 2});

/// The computational-basis reference state z|00><00| + (1-z)|11><11| of
/// schmidt_pair_state, i.e. dephasing with |0>, |1>, ... as the A-basis.
DensityMatrix schmidt_pair_reference(double z, BipartiteDims dims = {2, 2});

}  // namespace discord
