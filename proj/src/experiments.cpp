#include "discord/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <utility>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace discord::experiments {
namespace {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view flag(bool b) { return b ? "true" : "false"; }

DegeneracyPolicy policy_for(bool allowDegenerate) {
  return allowDegenerate ? DegeneracyPolicy::UseTieBrokenBasis : DegeneracyPolicy::Reject;
}

void write_preamble(std::ostream& out, std::string_view command, const ConfigEcho& config,
                    std::optional<std::uint64_t> seed) {
  fmt::print(out, "# tool: {} {}\n", kToolName, kToolVersion);
  fmt::print(out, "# command: {}\n", command);
  std::string echo;
  for (const auto& [key, value] : config) {
    if (!echo.empty()) echo += ", ";
    echo += key + "=" + value;
  }
  fmt::print(out, "# config: {}\n", echo);
  if (seed) {
    fmt::print(out, "# seed: {}\n", *seed);
    fmt::print(out, "# rng: {}\n", kRngIdentity);
  }
}

std::string dims_value(BipartiteDims dims) { return fmt::format("{}x{}", dims.dA, dims.dB); }

DensityMatrix dephase_or_rethrow(const DensityMatrix& rho, bool allowDegenerate,
                                 std::uint64_t seed) {
  try {
    return local_dephase(rho, policy_for(allowDegenerate));
  } catch (const DegenerateLocalState& e) {
    throw DegenerateLocalState(fmt::format("{} (seed {})", e.what(), seed));
  }
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void write_trajectory_rows(std::ostream& out, const WitnessTrajectory& trajectory,
                           std::optional<double> beta) {
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    if (beta) fmt::print(out, "{},", format_number(*beta));
    fmt::print(out, "{},{}\n", format_number(trajectory.times[i]),
               format_number(trajectory.values[i]));
  }
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

// --- pure-state -----------------------------------------------------------

std::vector<PureStateRow> run_pure_state(const PureStateConfig& config) {
  if (!(config.zMin >= 0.0 && config.zMin < config.zMax && config.zMax <= 1.0)) {
    throw InvalidArgument(
        fmt::format("pure-state: need 0 <= z-min < z-max <= 1, got [{}, {}]", config.zMin,
                    config.zMax));
  }
  if (config.zSteps < 2) throw InvalidArgument("pure-state: z-steps must be at least 2");

  std::vector<PureStateRow> rows;
  rows.reserve(static_cast<std::size_t>(config.zSteps));
  const double step = (config.zMax - config.zMin) / (config.zSteps - 1);
  for (int i = 0; i < config.zSteps; ++i) {
    const double z = i == config.zSteps - 1 ? config.zMax : config.zMin + step * i;
    const DensityMatrix rho = schmidt_pair_state(z);
    const DensityMatrix reference = schmidt_pair_reference(z);
    const HaarStats stats = haar_stats(rho, reference);
    const double ratio = stats.mu > 0.0 ? stats.s() / stats.mu : 0.0;
    rows.push_back({z, hs_norm_sq(rho.matrix() - reference.matrix()), stats.mu, stats.s2, ratio});
  }
  return rows;
}

void write_pure_state(const PureStateConfig& config, std::ostream& out) {
  const auto rows = run_pure_state(config);
  write_preamble(out, "pure-state",
                 {{"z-min", format_number(config.zMin)},
                  {"z-max", format_number(config.zMax)},
                  {"z-steps", std::to_string(config.zSteps)}},
                 std::nullopt);
  fmt::print(out, "z,D,mu,s2,sOverMu\n");
  for (const auto& row : rows) {
    fmt::print(out, "{},{},{},{},{}\n", format_number(row.z), format_number(row.discord),
               format_number(row.mu), format_number(row.s2), format_number(row.sOverMu));
  }
}

// --- gibbs ----------------------------------------------------------------

HermitianOperator seeded_hamiltonian(BipartiteDims dims, std::uint64_t seed) {
  RngStream rng(RngSeed{seed});
  return sample_gue_hamiltonian(dims, rng);
}

GibbsSummary summarize_pair(const DensityMatrix& rho, const DensityMatrix& rhoPrime) {
  const CMatrix delta = rho.matrix() - rhoPrime.matrix();
  GibbsSummary summary;
  summary.discord = hs_norm_sq(delta);
  if (rho.dims().dA == 2) {
    const GibbsSpecialization special = gibbs_specialization(rho.dims().dB, delta);
    summary.mu = special.mu;
    summary.s = std::sqrt(std::max(0.0, special.s2));
  } else {
    const HaarStats stats = haar_stats(delta, rho.dims());
    summary.mu = stats.mu;
    summary.s = std::sqrt(std::max(0.0, stats.s2));
  }
  return summary;
}

namespace {

GibbsSummary summarize_with_dynamics(const DensityMatrix& rho, const DensityMatrix& rhoPrime,
                                     const WitnessTrajectory& trajectory,
                                     const EffectiveDimensionOptions& options) {
  GibbsSummary summary = summarize_pair(rho, rhoPrime);
  try {
    summary.effectiveDimension = effective_dimension(trajectory, summary.discord, options);
  } catch (const TimeAverageZero&) {
    summary.effectiveDimension.reset();
  }
  return summary;
}

void validate_grid_dims(BipartiteDims dims, double beta) {
  validate_dims(dims, 2);
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument(fmt::format("beta must be finite and >= 0, got {}", beta));
  }
}

}  // namespace

GibbsRun run_gibbs(const GibbsConfig& config) {
  validate_grid_dims(config.dims, config.beta);
  const TimeGrid grid(0.0, config.tEnd, config.nPoints);
  HermitianOperator h = seeded_hamiltonian(config.dims, config.seed);
  DensityMatrix rho = gibbs_state(h, {config.beta, config.dims});
  DensityMatrix rhoPrime = dephase_or_rethrow(rho, config.allowDegenerate, config.seed);
  WitnessTrajectory trajectory = witness_trajectory(rho, rhoPrime, h, grid);
  GibbsSummary summary = summarize_with_dynamics(
      rho, rhoPrime, trajectory, {.requireConvergence = config.requireConvergence});
  return {std::move(h), std::move(rho), std::move(rhoPrime), std::move(summary),
          std::move(trajectory)};
}

void write_gibbs(const GibbsConfig& config, std::ostream& out) {
  const GibbsRun run = run_gibbs(config);
  const DephasingBasis basis = dephasing_basis(run.rho);
  write_preamble(out, "gibbs",
                 {{"dims", dims_value(config.dims)},
                  {"beta", format_number(config.beta)},
                  {"seed", std::to_string(config.seed)},
                  {"t-end", format_number(config.tEnd)},
                  {"n-points", std::to_string(config.nPoints)},
                  {"allow-degenerate", std::string(flag(config.allowDegenerate))},
                  {"require-convergence", std::string(flag(config.requireConvergence))}},
                 config.seed);
  const auto& eff = run.summary.effectiveDimension;
  fmt::print(out, "# local-state-pure: {}\n", flag(basis.localStatePure));
  fmt::print(out, "# degenerate-local-state: {}\n", flag(basis.degenerate));
  fmt::print(out, "# D: {}\n", format_number(run.summary.discord));
  fmt::print(out, "# mu: {}\n", format_number(run.summary.mu));
  fmt::print(out, "# s: {}\n", format_number(run.summary.s));
  fmt::print(out, "# time-average: {}\n", format_number(run.trajectory.timeAverage));
  fmt::print(out, "# dEff: {}\n", format_number(eff ? eff->dEff : kNaN));
  fmt::print(out, "# dEff-converged: {}\n", flag(eff && eff->diagnostics.converged));
  fmt::print(out, "# dEff-status: {}\n",
             to_string(eff ? RowStatus::Ok : RowStatus::TimeAverageZero));
  fmt::print(out, "t,dist\n");
  write_trajectory_rows(out, run.trajectory, std::nullopt);
}

// --- temperature-sweep ----------------------------------------------------

std::uint64_t fingerprint(const CMatrix& m) {
  const std::string_view bytes(reinterpret_cast<const char*>(m.data()),
                               static_cast<std::size_t>(m.size()) * sizeof(Complex));
  return std::hash<std::string_view>{}(bytes);
}

std::vector<SweepBlock> run_temperature_sweep(const TemperatureSweepConfig& config) {
  if (config.betas.empty()) throw InvalidArgument("temperature-sweep: empty beta list");
  for (double beta : config.betas) validate_grid_dims(config.dims, beta);
  const TimeGrid grid(0.0, config.tEnd, config.nPoints);
  const HermitianOperator h = seeded_hamiltonian(config.dims, config.seed);

  std::vector<SweepBlock> blocks;
  blocks.reserve(config.betas.size());
  for (double beta : config.betas) {
    const DensityMatrix rho = gibbs_state(h, {beta, config.dims});
    const DensityMatrix rhoPrime = dephase_or_rethrow(rho, config.allowDegenerate, config.seed);
    WitnessTrajectory trajectory = witness_trajectory(rho, rhoPrime, h, grid);
    GibbsSummary summary =
        summarize_with_dynamics(rho, rhoPrime, trajectory, {.requireConvergence = false});
    blocks.push_back({beta, std::move(summary), fingerprint(h.matrix()), std::move(trajectory)});
  }
  return blocks;
}

void write_temperature_sweep(const TemperatureSweepConfig& config, std::ostream& out) {
  const auto blocks = run_temperature_sweep(config);
  std::string betas;
  for (double beta : config.betas) betas += (betas.empty() ? "" : ";") + format_number(beta);
  write_preamble(out, "temperature-sweep",
                 {{"dims", dims_value(config.dims)},
                  {"betas", betas},
                  {"seed", std::to_string(config.seed)},
                  {"t-end", format_number(config.tEnd)},
                  {"n-points", std::to_string(config.nPoints)},
                  {"allow-degenerate", std::string(flag(config.allowDegenerate))}},
                 config.seed);
  fmt::print(out, "# trajectories\n");
  fmt::print(out, "beta,t,dist\n");
  for (const auto& block : blocks) write_trajectory_rows(out, block.trajectory, block.beta);
  fmt::print(out, "# summary\n");
  fmt::print(out, "beta,D,mu,s,hamiltonian\n");
  for (const auto& block : blocks) {
    fmt::print(out, "{},{},{},{},{:016x}\n", format_number(block.beta),
               format_number(block.summary.discord), format_number(block.summary.mu),
               format_number(block.summary.s), block.hamiltonianFingerprint);
  }
}

// --- haar-stats -----------------------------------------------------------

HaarStatsRow run_haar_stats(const HaarStatsConfig& config) {
  validate_dims(config.dims, 2);
  if (config.nSamples < 2) throw InvalidArgument("haar-stats: n-samples must be at least 2");

  std::optional<DensityMatrix> rho;
  std::optional<DensityMatrix> rhoPrime;
  if (config.state == StateKind::Schmidt) {
    rho = schmidt_pair_state(config.z, config.dims);
    rhoPrime = schmidt_pair_reference(config.z, config.dims);
  } else {
    validate_grid_dims(config.dims, config.beta);
    rho = gibbs_state(seeded_hamiltonian(config.dims, config.seed), {config.beta, config.dims});
    rhoPrime = dephase_or_rethrow(*rho, config.allowDegenerate, config.seed);
  }

  const HaarStats stats = haar_stats(*rho, *rhoPrime);
  HaarStatsRow row{stats.mu, stats.s2, monte_carlo_stats(*rho, *rhoPrime, config.nSamples,
                                                         RngSeed{config.seed}),
                   0.0};
  if (row.mc.stdError > 0.0) row.zScore = (row.mc.mean - row.analyticMu) / row.mc.stdError;
  return row;
}

void write_haar_stats(const HaarStatsConfig& config, std::ostream& out) {
  const HaarStatsRow row = run_haar_stats(config);
  ConfigEcho echo{{"dims", dims_value(config.dims)},
                  {"state", config.state == StateKind::Schmidt ? "schmidt" : "gibbs"}};
  if (config.state == StateKind::Schmidt) {
    echo.emplace_back("z", format_number(config.z));
  } else {
    echo.emplace_back("beta", format_number(config.beta));
    echo.emplace_back("allow-degenerate", std::string(flag(config.allowDegenerate)));
  }
  echo.emplace_back("n-samples", std::to_string(config.nSamples));
  echo.emplace_back("seed", std::to_string(config.seed));
  write_preamble(out, "haar-stats", echo, config.seed);
  fmt::print(out, "analyticMu,analyticS2,mcMean,mcVar,stdError,nSamples,zScore\n");
  fmt::print(out, "{},{},{},{},{},{},{}\n", format_number(row.analyticMu),
             format_number(row.analyticS2), format_number(row.mc.mean),
             format_number(row.mc.variance), format_number(row.mc.stdError), row.mc.nSamples,
             format_number(row.zScore));
}

// --- effective-dim --------------------------------------------------------

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Ok:
      return "ok";
    case RowStatus::TimeAverageZero:
      return "time-average-zero";
    case RowStatus::DegenerateLocalState:
      return "degenerate-local-state";
  }
  return "unknown";
}

namespace {

HermitianOperator uncoupled_hamiltonian(BipartiteDims dims, RngStream& rng) {
  const HermitianOperator ha = sample_gue_hamiltonian(dims.dA, rng);
  const HermitianOperator hb = sample_gue_hamiltonian(dims.dB, rng);
  return HermitianOperator(tensor_product(ha.matrix(), CMatrix::Identity(dims.dB, dims.dB)) +
                               tensor_product(CMatrix::Identity(dims.dA, dims.dA), hb.matrix()),
                           dims);
}

EffectiveDimRow evaluate_row(int index, const HermitianOperator& h, const EffectiveDimConfig& config,
                             const TimeGrid& grid) {
  EffectiveDimRow row{index, kNaN, kNaN, false, RowStatus::Ok};
  const DensityMatrix rho = gibbs_state(h, {config.beta, config.dims});
  std::optional<DensityMatrix> rhoPrime;
  try {
    rhoPrime = local_dephase(rho);
  } catch (const DegenerateLocalState&) {
    row.status = RowStatus::DegenerateLocalState;
    return row;
  }
  const WitnessTrajectory trajectory = witness_trajectory(rho, *rhoPrime, h, grid);
  row.timeAverage = trajectory.timeAverage;
  try {
    const EffectiveDimension eff =
        effective_dimension(trajectory, hs_norm_sq(rho.matrix() - rhoPrime->matrix()),
                            {.convergenceTolerance = config.convergenceTolerance,
                             .requireConvergence = false});
    row.dEff = eff.dEff;
    row.converged = eff.diagnostics.converged;
  } catch (const TimeAverageZero&) {
    row.status = RowStatus::TimeAverageZero;
  }
  return row;
}

}  // namespace

EffectiveDimReport run_effective_dim(const EffectiveDimConfig& config) {
  validate_grid_dims(config.dims, config.beta);
  if (config.nHamiltonians < 1) throw InvalidArgument("effective-dim: need at least 1 Hamiltonian");
  if (!(config.convergenceTolerance > 0.0)) {
    throw InvalidArgument("effective-dim: convergence tolerance must be positive");
  }
  const TimeGrid grid(0.0, config.tEnd, config.nPoints);

  EffectiveDimReport report;
  std::vector<double> accepted;
  for (int i = 0; i < config.nHamiltonians; ++i) {
    RngStream rng = RngStream::derive(RngSeed{config.seed}, static_cast<std::uint64_t>(i));
    report.rows.push_back(evaluate_row(i, sample_gue_hamiltonian(config.dims, rng), config, grid));
  }
  if (config.injectUncoupled) {
    RngStream rng =
        RngStream::derive(RngSeed{config.seed}, static_cast<std::uint64_t>(config.nHamiltonians));
    report.rows.push_back(
        evaluate_row(config.nHamiltonians, uncoupled_hamiltonian(config.dims, rng), config, grid));
  }
  for (const auto& row : report.rows) {
    if (row.status == RowStatus::Ok) accepted.push_back(row.dEff);
  }
  report.medianDEff = median(std::move(accepted));
  return report;
}

void write_effective_dim(const EffectiveDimConfig& config, std::ostream& out) {
  const EffectiveDimReport report = run_effective_dim(config);
  write_preamble(out, "effective-dim",
                 {{"dims", dims_value(config.dims)},
                  {"beta", format_number(config.beta)},
                  {"n-hamiltonians", std::to_string(config.nHamiltonians)},
                  {"seed", std::to_string(config.seed)},
                  {"t-end", format_number(config.tEnd)},
                  {"n-points", std::to_string(config.nPoints)},
                  {"convergence-tolerance", format_number(config.convergenceTolerance)},
                  {"inject-uncoupled", std::string(flag(config.injectUncoupled))}},
                 config.seed);
  fmt::print(out, "hIndex,timeAverage,dEff,converged,status\n");
  for (const auto& row : report.rows) {
    fmt::print(out, "{},{},{},{},{}\n", row.hIndex, format_number(row.timeAverage),
               format_number(row.dEff), flag(row.converged), to_string(row.status));
  }
  fmt::print(out, "median,,{},,summary\n", format_number(report.medianDEff));
}

}  // namespace discord::experiments
