#pragma once

// Seeded experiment runners behind the command-line tool. Each runner returns
// structured results and has a matching writer that emits CSV with a
// '#'-prefixed metadata block. Writers only format values computed by the
// library; nothing is recomputed here.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "discord/dephasing.hpp"
#include "discord/dynamics.hpp"
#include "discord/haar_averages.hpp"
#include "discord/random_ensembles.hpp"

namespace discord::experiments {

inline constexpr std::string_view kToolName = "discord-witness";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// 17 significant digits, the shortest form that round-trips every double.
std::string format_number(double x);

// --- pure-state -----------------------------------------------------------

struct PureStateConfig {
  double zMin = 0.0;
  double zMax = 1.0;
  int zSteps = 101;  // grid points including both ends
};

struct PureStateRow {
  double z;
  double discord;
  double mu;
  double s2;
  double sOverMu;  // 0 where mu vanishes
};

std::vector<PureStateRow> run_pure_state(const PureStateConfig& config);
void write_pure_state(const PureStateConfig& config, std::ostream& out);

// --- gibbs ----------------------------------------------------------------

struct GibbsConfig {
  BipartiteDims dims{2, 2};
  double beta = 1.0;
  std::uint64_t seed = 1;
  double tEnd = 50.0;
  int nPoints = 500;
  bool allowDegenerate = false;
  bool requireConvergence = false;
};

/// Reference-state statistics for one Gibbs state.
struct GibbsSummary {
  double discord = 0.0;
  double mu = 0.0;
  double s = 0.0;
  std::optional<EffectiveDimension> effectiveDimension;  // empty when the average is zero
};

struct GibbsRun {
  HermitianOperator hamiltonian;
  DensityMatrix rho;
  DensityMatrix rhoPrime;
  GibbsSummary summary;
  WitnessTrajectory trajectory;
};

/// H is the first GUE draw of RngStream(seed), so runs sharing a seed share H.
HermitianOperator seeded_hamiltonian(BipartiteDims dims, std::uint64_t seed);

/// D, mu and s for a state pair; mu and s use the dA = 2 closed forms when dA == 2.
GibbsSummary summarize_pair(const DensityMatrix& rho, const DensityMatrix& rhoPrime);

GibbsRun run_gibbs(const GibbsConfig& config);
void write_gibbs(const GibbsConfig& config, std::ostream& out);

// --- temperature-sweep ----------------------------------------------------

struct TemperatureSweepConfig {
  BipartiteDims dims{2, 8};
  std::vector<double> betas{2.0, 1.0, 0.5, 0.1, 0.0};
  std::uint64_t seed = 1;
  double tEnd = 50.0;
  int nPoints = 500;
  bool allowDegenerate = false;
};

struct SweepBlock {
  double beta;
  GibbsSummary summary;
  std::uint64_t hamiltonianFingerprint;
  WitnessTrajectory trajectory;
};

/// Hash of the raw matrix bytes; equal for bit-identical Hamiltonians.
std::uint64_t fingerprint(const CMatrix& m);

std::vector<SweepBlock> run_temperature_sweep(const TemperatureSweepConfig& config);
void write_temperature_sweep(const TemperatureSweepConfig& config, std::ostream& out);

// --- haar-stats -----------------------------------------------------------

enum class StateKind { Schmidt, Gibbs };

struct HaarStatsConfig {
  BipartiteDims dims{2, 2};
  StateKind state = StateKind::Schmidt;
  double z = 0.5;     // Schmidt weight, StateKind::Schmidt
  double beta = 1.0;  // StateKind::Gibbs
  std::size_t nSamples = 2000;
  std::uint64_t seed = 1;
  bool allowDegenerate = false;
};

struct HaarStatsRow {
  double analyticMu;
  double analyticS2;
  MonteCarloStats mc;
  double zScore;  // (mc.mean - analyticMu) / mc.stdError, 0 when stdError == 0
};

HaarStatsRow run_haar_stats(const HaarStatsConfig& config);
void write_haar_stats(const HaarStatsConfig& config, std::ostream& out);

// --- effective-dim --------------------------------------------------------

struct EffectiveDimConfig {
  BipartiteDims dims{2, 8};
  double beta = 1.0;
  int nHamiltonians = 10;
  std::uint64_t seed = 1;
  double tEnd = 50.0;
  int nPoints = 500;
  double convergenceTolerance = 0.02;
  bool injectUncoupled = false;  // append one H_A (x) I + I (x) H_B row
};

enum class RowStatus { Ok, TimeAverageZero, DegenerateLocalState };

std::string_view to_string(RowStatus status);

struct EffectiveDimRow {
  int hIndex;
  double timeAverage;
  double dEff;  // NaN unless status == Ok
  bool converged;
  RowStatus status;
};

struct EffectiveDimReport {
  std::vector<EffectiveDimRow> rows;
  double medianDEff;  // over Ok rows; NaN if none
};

/// Hamiltonian i is the first GUE draw of RngStream::derive(seed, i).
EffectiveDimReport run_effective_dim(const EffectiveDimConfig& config);
void write_effective_dim(const EffectiveDimConfig& config, std::ostream& out);

}  // namespace discord::experiments
