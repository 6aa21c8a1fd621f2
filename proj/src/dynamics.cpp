#include "discord/dynamics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "discord/kernels.hpp"

namespace discord {
namespace {

constexpr double kZeroAverage = 1e-12;

void require_same_dims(BipartiteDims a, BipartiteDims b, const char* what) {
  if (!(a == b)) {
    throw DimensionMismatch(fmt::format("{}: dims {}x{} and {}x{} differ", what, a.dA, a.dB, b.dA,
                                        b.dB));
  }
}

}  // namespace

TimeGrid::TimeGrid(double tStart, double tEnd, int nPoints)
    : tStart_(tStart), tEnd_(tEnd), nPoints_(nPoints) {
  if (!(std::isfinite(tStart) && std::isfinite(tEnd)) || !(tStart >= 0.0) || !(tEnd > tStart)) {
    throw InvalidArgument(fmt::format("TimeGrid: need 0 <= tStart < tEnd, got [{}, {}]", tStart,
                                      tEnd));
  }
  if (nPoints < 2) throw InvalidArgument("TimeGrid: need at least 2 points");
}

double TimeGrid::at(int i) const noexcept {
  return i == nPoints_ - 1 ? tEnd_ : tStart_ + step() * i;
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(nPoints_);
  for (int i = 0; i < nPoints_; ++i) out[i] = at(i);
  return out;
}

TimeGrid default_time_grid() { return TimeGrid(0.0, 50.0, 500); }

KrausMap::KrausMap(std::vector<CMatrix> operators, BipartiteDims dims)
    : operators_(std::move(operators)), dims_(dims) {
  validate_dims(dims);
  if (operators_.empty()) throw InvalidArgument("KrausMap: empty operator list");
  const int d = dims.total();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const CMatrix& k : operators_) {
    if (k.rows() != d || k.cols() != d) throw DimensionMismatch("KrausMap: operator size");
    sum += k.adjoint() * k;
  }
  const double dev = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(dev < tol::unit)) {
    throw NotTracePreserving(fmt::format("KrausMap: sum K^dagger K deviates from I by {:.3e}", dev));
  }
}

CMatrix KrausMap::apply(const CMatrix& x) const {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (const CMatrix& k : operators_) out.noalias() += k * x * k.adjoint();
  return out;
}

double witness_distance(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                        const UnitaryOperator& u) {
  require_same_dims(rho.dims(), rhoPrime.dims(), "witness_distance");
  require_same_dims(rho.dims(), u.dims(), "witness_distance");
  const CMatrix delta = rho.matrix() - rhoPrime.matrix();
  return hs_norm_sq(partial_trace_b(u.matrix() * delta * u.matrix().adjoint(), rho.dims()));
}

double witness_distance_kraus(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                              const KrausMap& map) {
  require_same_dims(rho.dims(), rhoPrime.dims(), "witness_distance_kraus");
  require_same_dims(rho.dims(), map.dims(), "witness_distance_kraus");
  return hs_norm_sq(partial_trace_b(map.apply(rho.matrix() - rhoPrime.matrix()), rho.dims()));
}

WitnessTrajectory witness_trajectory(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                     const HermitianOperator& h, const TimeGrid& grid) {
  const BipartiteDims dims = rho.dims();
  require_same_dims(dims, rhoPrime.dims(), "witness_trajectory");
  require_same_dims(dims, h.dims(), "witness_trajectory");

  const SpectralDecomposition spectrum = eig_hermitian(h);
  const CMatrix& v = spectrum.eigenvectors;
  const CMatrix deltaEnergy = v.adjoint() * (rho.matrix() - rhoPrime.matrix()) * v;
  const auto n = static_cast<std::size_t>(dims.total());
  const kernels::KernelTable& k = kernels::active();

  WitnessTrajectory out;
  out.dims = dims;
  out.times = grid.points();
  out.values.reserve(out.times.size());

  CVector phases(dims.total());
  CMatrix modulated(dims.total(), dims.total());
  CMatrix evolved(dims.total(), dims.total());
  double sum = 0.0;
  for (double t : out.times) {
    for (int a = 0; a < dims.total(); ++a) phases(a) = std::polar(1.0, -spectrum.eigenvalues(a) * t);
    k.phase_modulate({deltaEnergy.data(), n * n}, {phases.data(), n}, {modulated.data(), n * n});
    evolved.noalias() = v * modulated * v.adjoint();
    const double value = hs_norm_sq(partial_trace_b(evolved, dims));
    out.values.push_back(value);
    sum += value;
  }
  out.timeAverage = sum / static_cast<double>(out.values.size());
  return out;
}

ConvergenceDiagnostics assess_convergence(const WitnessTrajectory& trajectory, double tolerance) {
  ConvergenceDiagnostics diag;
  if (trajectory.values.empty()) return diag;
  const double mid = 0.5 * (trajectory.times.front() + trajectory.times.back());
  double sum = 0.0;
  double halfSum = 0.0;
  std::size_t halfCount = 0;
  for (std::size_t i = 0; i < trajectory.values.size(); ++i) {
    sum += trajectory.values[i];
    if (trajectory.times[i] <= mid) {
      halfSum += trajectory.values[i];
      ++halfCount;
    }
  }
  diag.fullAverage = sum / static_cast<double>(trajectory.values.size());
  diag.halfAverage = halfCount > 0 ? halfSum / static_cast<double>(halfCount) : diag.fullAverage;
  diag.relativeChange = diag.fullAverage > 0.0
                            ? std::abs(diag.halfAverage - diag.fullAverage) / diag.fullAverage
                            : 0.0;
  diag.converged = diag.fullAverage > 0.0 && diag.relativeChange < tolerance;
  return diag;
}

double invert_haar_mean(double average, double deltaNormSq, int dA) {
  if (dA < 2) throw InvalidArgument("invert_haar_mean: dA must be at least 2");
  if (!(average >= kZeroAverage)) {
    throw TimeAverageZero(fmt::format(
        "time-averaged witness {:.3e} is zero: no finite effective dimension", average));
  }
  if (!(deltaNormSq >= 0.0)) throw InvalidArgument("invert_haar_mean: negative ||Delta||^2");
  const double a2 = static_cast<double>(dA) * dA;
  const double b = (a2 - 1.0) * deltaNormSq;
  return (b + std::sqrt(b * b + 4.0 * a2 * average * average)) / (2.0 * a2 * average);
}

EffectiveDimension effective_dimension(const WitnessTrajectory& trajectory, double deltaNormSq,
                                       const EffectiveDimensionOptions& options) {
  EffectiveDimension out;
  out.timeAverage = trajectory.timeAverage;
  out.deltaNormSq = deltaNormSq;
  out.diagnostics = assess_convergence(trajectory, options.convergenceTolerance);
  out.dEff = invert_haar_mean(trajectory.timeAverage, deltaNormSq, trajectory.dims.dA);
  if (options.requireConvergence && !out.diagnostics.converged) {
    throw NotConverged(fmt::format(
        "time average changed by {:.2f}% when halving the window (limit {:.2f}%)",
        100.0 * out.diagnostics.relativeChange, 100.0 * options.convergenceTolerance));
  }
  return out;
}

EffectiveDimension effective_dimension(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                       const HermitianOperator& h, const TimeGrid& grid,
                                       const EffectiveDimensionOptions& options) {
  const WitnessTrajectory trajectory = witness_trajectory(rho, rhoPrime, h, grid);
  return effective_dimension(trajectory, hs_norm_sq(rho.matrix() - rhoPrime.matrix()), options);
}

}  // namespace discord
