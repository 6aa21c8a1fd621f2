#pragma once

#include <vector>

#include "discord/quantum_core.hpp"

namespace discord {

/// Uniform grid tStart, ..., tEnd with nPoints points.
class TimeGrid {
 public:
  /// Throws InvalidArgument unless 0 <= tStart < tEnd and nPoints >= 2.
  TimeGrid(double tStart, double tEnd, int nPoints);

  double tStart() const noexcept { return tStart_; }
  double tEnd() const noexcept { return tEnd_; }
  int size() const noexcept { return nPoints_; }
  double step() const noexcept { return (tEnd_ - tStart_) / (nPoints_ - 1); }
  double at(int i) const noexcept;
  std::vector<double> points() const;

 private:
  double tStart_;
  double tEnd_;
  int nPoints_;
};

/// Default experiment grid: t in [0, 50], 500 points (GUE entries of unit variance).
TimeGrid default_time_grid();

struct WitnessTrajectory {
  std::vector<double> times;
  std::vector<double> values;  // dist(t) >= 0
  double timeAverage = 0.0;    // arithmetic mean of values
  BipartiteDims dims;
};

/// Trace-preserving map X -> sum_a K_a X K_a^dagger.
class KrausMap {
 public:
  /// Throws NotTracePreserving unless sum_a K_a^dagger K_a = I within tol::unit.
  KrausMap(std::vector<CMatrix> operators, BipartiteDims dims);

  const std::vector<CMatrix>& operators() const noexcept { return operators_; }
  BipartiteDims dims() const noexcept { return dims_; }

  CMatrix apply(const CMatrix& x) const;

 private:
  std::vector<CMatrix> operators_;
  BipartiteDims dims_;
};

/// dist = ||Tr_B{U (rho - rho') U^dagger}||^2.
double witness_distance(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                        const UnitaryOperator& u);

/// dist = ||Tr_B{Lambda(rho - rho')}||^2.
double witness_distance_kraus(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                              const KrausMap& map);

/// dist(t) on `grid` for U_t = exp(-i H t). H is diagonalized once; each time
/// point is a phase modulation of Delta in the energy basis followed by a
/// basis change back and a partial trace.
WitnessTrajectory witness_trajectory(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                     const HermitianOperator& h, const TimeGrid& grid);

struct ConvergenceDiagnostics {
  double fullAverage = 0.0;     // mean over the whole grid
  double halfAverage = 0.0;     // mean over t <= (tStart + tEnd) / 2
  double relativeChange = 0.0;  // |half - full| / full
  bool converged = false;       // relativeChange < tolerance
};

struct EffectiveDimensionOptions {
  double convergenceTolerance = 0.02;
  // When set, a trajectory failing the halving test raises NotConverged;
  // otherwise the result is returned with diagnostics.converged == false.
  bool requireConvergence = true;
};

struct EffectiveDimension {
  double dEff = 0.0;
  double timeAverage = 0.0;
  double deltaNormSq = 0.0;  // ||rho - rho'||^2
  ConvergenceDiagnostics diagnostics;
};

ConvergenceDiagnostics assess_convergence(const WitnessTrajectory& trajectory, double tolerance);

/// Positive root x of avg dA^2 x^2 - (dA^2 - 1) ||Delta||^2 x - avg = 0, i.e. the
/// environment dimension whose Haar mean equals `average`. Throws
/// TimeAverageZero when average < 1e-12.
double invert_haar_mean(double average, double deltaNormSq, int dA);

EffectiveDimension effective_dimension(const WitnessTrajectory& trajectory, double deltaNormSq,
                                       const EffectiveDimensionOptions& options = {});

EffectiveDimension effective_dimension(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                       const HermitianOperator& h, const TimeGrid& grid,
                                       const EffectiveDimensionOptions& options = {});

}  // namespace discord
