#include "discord/haar_averages.hpp"

#include <algorithm>
#include <thread>

#include <fmt/format.h>

namespace discord {
namespace {

void require_pair(const DensityMatrix& rho, const DensityMatrix& rhoPrime) {
  if (!(rho.dims() == rhoPrime.dims())) {
    throw DimensionMismatch(fmt::format("state pair dims differ: {}x{} vs {}x{}", rho.dims().dA,
                                        rho.dims().dB, rhoPrime.dims().dA, rhoPrime.dims().dB));
  }
}

double witness_value(const CMatrix& delta, const CMatrix& u, BipartiteDims dims) {
  return hs_norm_sq(partial_trace_b(u * delta * u.adjoint(), dims));
}

}  // namespace

double haar_mean_coefficient(BipartiteDims dims) {
  validate_dims(dims, 2);
  const double a2 = static_cast<double>(dims.dA) * dims.dA;
  const double b = dims.dB;
  return (a2 * b - b) / (a2 * b * b - 1.0);
}

VarianceCoefficients haar_variance_coefficients(BipartiteDims dims) {
  validate_dims(dims, 2);
  if (dims.dB == 1) return {0.0, 0.0};
  const double a = dims.dA;
  const double b = dims.dB;
  const double a2 = a * a;
  const double b2 = b * b;
  const double dd = a2 * b2;  // (dA dB)^2
  const double c1 = 2.0 * (15.0 - 4.0 * dd + dd * dd) * (a2 - 1.0) * (b2 - 1.0) /
                    ((36.0 - 13.0 * dd + dd * dd) * (dd - 1.0) * (dd - 1.0));
  const double c2 =
      -10.0 * a * b * (b2 - 1.0) * (a2 - 1.0) / (dd * (dd - 7.0) * (dd - 7.0) - 36.0);
  return {c1, c2};
}

HaarStats haar_stats(const CMatrix& delta, BipartiteDims dims) {
  validate_dims(dims, 2);
  if (delta.rows() != dims.total() || delta.cols() != dims.total()) {
    throw DimensionMismatch("haar_stats: difference operator does not match dims");
  }
  const CMatrix delta2 = delta * delta;
  const double tr2 = delta2.trace().real();
  const double tr4 = (delta2 * delta2).trace().real();
  const VarianceCoefficients c = haar_variance_coefficients(dims);
  HaarStats stats;
  stats.dims = dims;
  stats.c1 = c.c1;
  stats.c2 = c.c2;
  stats.mu = haar_mean_coefficient(dims) * tr2;
  stats.s2 = c.c1 * tr2 * tr2 + c.c2 * tr4;
  return stats;
}

HaarStats haar_stats(const DensityMatrix& rho, const DensityMatrix& rhoPrime) {
  require_pair(rho, rhoPrime);
  return haar_stats(rho.matrix() - rhoPrime.matrix(), rho.dims());
}

double haar_mean(const DensityMatrix& rho, const DensityMatrix& rhoPrime) {
  return haar_stats(rho, rhoPrime).mu;
}

double haar_variance(const DensityMatrix& rho, const DensityMatrix& rhoPrime) {
  return haar_stats(rho, rhoPrime).s2;
}

double relative_fluctuation(BipartiteDims dims) {
  validate_dims(dims, 2);
  const double a2 = static_cast<double>(dims.dA) * dims.dA;
  return std::sqrt(2.0 / (a2 - 1.0));
}

GibbsSpecialization gibbs_specialization(int dB, const CMatrix& delta) {
  if (dB < 1) throw InvalidArgument("gibbs_specialization: dB must be positive");
  if (delta.rows() != 2 * dB || delta.cols() != 2 * dB) {
    throw DimensionMismatch("gibbs_specialization: expects a (2 dB) x (2 dB) difference, dA = 2");
  }
  const double b = dB;
  const double b2 = b * b;
  const CMatrix delta2 = delta * delta;
  const double normSq = delta2.trace().real();
  const double tr4 = (delta2 * delta2).trace().real();
  const double mu = 3.0 * b / (4.0 * b2 - 1.0) * normSq;
  const double first = 3.0 * (15.0 - 16.0 * b2 + 16.0 * b2 * b2) /
                       (2.0 * (1.0 - 4.0 * b2) * (1.0 - 4.0 * b2) * (4.0 * b2 - 9.0));
  const double second = 15.0 * b / (9.0 - 40.0 * b2 + 16.0 * b2 * b2);
  return {mu, first * normSq * normSq - second * tr4};
}

std::vector<double> haar_witness_samples(const CMatrix& delta, BipartiteDims dims,
                                         std::size_t nSamples, RngSeed seed) {
  validate_dims(dims);
  if (delta.rows() != dims.total() || delta.cols() != dims.total()) {
    throw DimensionMismatch("haar_witness_samples: difference operator does not match dims");
  }
  std::vector<double> samples(nSamples, 0.0);
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng = RngStream::derive(seed, i);
      samples[i] = witness_value(delta, sample_haar_unitary(dims, rng).matrix(), dims);
    }
  };

  constexpr std::size_t kMinPerWorker = 64;
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::clamp<std::size_t>(nSamples / kMinPerWorker, 1, hw);
  if (workers == 1) {
    work(0, nSamples);
    return samples;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (nSamples + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(nSamples, w * chunk);
    const std::size_t end = std::min(nSamples, begin + chunk);
    pool.emplace_back(work, begin, end);
  }
  pool.clear();  // joins
  return samples;
}

MonteCarloStats summarize_samples(const std::vector<double>& samples) {
  MonteCarloStats out;
  out.nSamples = samples.size();
  if (samples.empty()) return out;
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / static_cast<double>(samples.size());
  if (samples.size() < 2) return out;
  double ss = 0.0;
  for (double x : samples) ss += (x - out.mean) * (x - out.mean);
  out.variance = ss / static_cast<double>(samples.size() - 1);
  out.stdError = std::sqrt(out.variance / static_cast<double>(samples.size()));
  return out;
}

MonteCarloStats monte_carlo_stats(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                  std::size_t nSamples, RngSeed seed) {
  require_pair(rho, rhoPrime);
  if (nSamples < 2) throw InvalidArgument("monte_carlo_stats: need at least 2 samples");
  return summarize_samples(
      haar_witness_samples(rho.matrix() - rhoPrime.matrix(), rho.dims(), nSamples, seed));
}

}  // namespace discord
