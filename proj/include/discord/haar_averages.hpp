#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "discord/quantum_core.hpp"
#include "discord/random_ensembles.hpp"

namespace discord {

/// Moments of X(U) = ||Tr_B{U Delta U^dagger}||^2 over Haar-random U, with
/// Delta = rho - rho'.
struct HaarStats {
  double mu = 0.0;
  double s2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  BipartiteDims dims;

  double s() const { return std::sqrt(s2); }
};

struct VarianceCoefficients {
  double c1;
  double c2;
};

/// (dA^2 dB - dB) / (dA^2 dB^2 - 1), the factor multiplying ||Delta||^2 in mu.
double haar_mean_coefficient(BipartiteDims dims);

/// c1, c2 of s^2 = c1 (Tr Delta^2)^2 + c2 Tr Delta^4, evaluated in the factored
/// form. For dB = 1 the partial trace is the identity map and both vanish.
VarianceCoefficients haar_variance_coefficients(BipartiteDims dims);

/// Both moments from the difference operator directly.
HaarStats haar_stats(const CMatrix& delta, BipartiteDims dims);
HaarStats haar_stats(const DensityMatrix& rho, const DensityMatrix& rhoPrime);

double haar_mean(const DensityMatrix& rho, const DensityMatrix& rhoPrime);
double haar_variance(const DensityMatrix& rho, const DensityMatrix& rhoPrime);

/// Large-dB limit of s / mu: sqrt(2 / (dA^2 - 1)). An approximation; the exact
/// ratio at finite dims is sqrt(stats.s2) / stats.mu.
double relative_fluctuation(BipartiteDims dims);

/// The dA = 2 closed forms:
///   mu = 3 dB / (4 dB^2 - 1) ||Delta||^2
///   s2 = 3 (15 - 16 dB^2 + 16 dB^4) / (2 (1 - 4 dB^2)^2 (4 dB^2 - 9)) ||Delta||^4
///        - 15 dB / (9 - 40 dB^2 + 16 dB^4) Tr Delta^4
struct GibbsSpecialization {
  double mu;
  double s2;
};

GibbsSpecialization gibbs_specialization(int dB, const CMatrix& delta);

struct MonteCarloStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased, n - 1 denominator
  double stdError = 0.0;  // sqrt(variance / n)
  std::size_t nSamples = 0;
};

/// X(U_i) for i = 0..n-1, each U_i drawn from RngStream::derive(seed, i).
/// Evaluated in parallel; the output order and values do not depend on the
/// number of workers.
std::vector<double> haar_witness_samples(const CMatrix& delta, BipartiteDims dims,
                                         std::size_t nSamples, RngSeed seed);

MonteCarloStats summarize_samples(const std::vector<double>& samples);

MonteCarloStats monte_carlo_stats(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                  std::size_t nSamples, RngSeed seed);

}  // namespace discord
