#include "discord/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "discord/experiments.hpp"

namespace discord::cli {
namespace {

namespace ex = discord::experiments;

struct Options {
  int dA = 2;
  int dB = 2;
  double beta = 1.0;
  std::vector<double> betas{2.0, 1.0, 0.5, 0.1, 0.0};
  std::uint64_t seed = 1;
  double tEnd = 50.0;
  int nPoints = 500;
  std::size_t nSamples = 2000;
  double zMin = 0.0;
  double zMax = 1.0;
  int zSteps = 101;
  double z = 0.5;
  std::string state = "schmidt";
  int nHamiltonians = 10;
  double convergenceTolerance = 0.02;
  bool allowDegenerate = false;
  bool requireConvergence = false;
  bool injectUncoupled = false;
  std::string output = "-";
};

void add_dims(CLI::App* cmd, Options& o, int defaultDB) {
  // Subcommands share one Options; reset before parsing so the chosen one's default wins.
  o.dB = defaultDB;
  cmd->preparse_callback([&o, defaultDB](std::size_t) { o.dB = defaultDB; });
  cmd->add_option("--da", o.dA, "Dimension of the probed subsystem A")->capture_default_str();
  cmd->add_option("--db", o.dB, "Dimension of the environment B")->capture_default_str();
}

void add_seed(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "64-bit RNG seed")->capture_default_str();
}

void add_grid(CLI::App* cmd, Options& o) {
  cmd->add_option("--t-end", o.tEnd, "Last time point of the uniform grid starting at 0")
      ->capture_default_str();
  cmd->add_option("--n-points", o.nPoints, "Number of grid points")->capture_default_str();
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--output,-o", o.output, "CSV output path, '-' for stdout")
      ->capture_default_str();
}

void add_allow_degenerate(CLI::App* cmd, Options& o) {
  cmd->add_flag("--allow-degenerate", o.allowDegenerate,
                "Dephase in the tie-broken basis when rho_A is degenerate");
}

}  // namespace

ExitCode exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const DegenerateLocalState*>(&e) != nullptr) return kDegenerateLocalState;
  if (dynamic_cast<const NotConverged*>(&e) != nullptr) return kNotConverged;
  if (dynamic_cast<const InvalidArgument*>(&e) != nullptr ||
      dynamic_cast<const DimensionMismatch*>(&e) != nullptr) {
    return kInvalidConfig;
  }
  return kFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local witness for bipartite quantum discord: seeded numerical experiments",
               std::string(ex::kToolName)};
  app.set_version_flag("--version", std::string(ex::kToolVersion));
  app.require_subcommand(1);

  Options o;
  std::function<void(std::ostream&)> job;

  auto* pure = app.add_subcommand("pure-state", "Haar mean and variance along the |psi_z> family");
  pure->add_option("--z-min", o.zMin)->capture_default_str();
  pure->add_option("--z-max", o.zMax)->capture_default_str();
  pure->add_option("--z-steps", o.zSteps, "Grid points including both ends")->capture_default_str();
  add_output(pure, o);
  pure->callback([&] {
    job = [&](std::ostream& s) { ex::write_pure_state({o.zMin, o.zMax, o.zSteps}, s); };
  });

  auto* gibbs = app.add_subcommand("gibbs", "Witness trajectory for one random Gibbs state");
  add_dims(gibbs, o, 2);
  gibbs->add_option("--beta", o.beta, "Inverse temperature")->capture_default_str();
  add_seed(gibbs, o);
  add_grid(gibbs, o);
  add_allow_degenerate(gibbs, o);
  gibbs->add_flag("--require-convergence", o.requireConvergence,
                  "Fail with exit code 4 if the time average has not converged");
  add_output(gibbs, o);
  gibbs->callback([&] {
    job = [&](std::ostream& s) {
      ex::write_gibbs({{o.dA, o.dB}, o.beta, o.seed, o.tEnd, o.nPoints, o.allowDegenerate,
                       o.requireConvergence},
                      s);
    };
  });

  auto* sweep = app.add_subcommand("temperature-sweep", "Fixed Hamiltonian, several temperatures");
  add_dims(sweep, o, 8);
  sweep->add_option("--betas", o.betas, "Inverse temperatures")->delimiter(',')
      ->capture_default_str();
  add_seed(sweep, o);
  add_grid(sweep, o);
  add_allow_degenerate(sweep, o);
  add_output(sweep, o);
  sweep->callback([&] {
    job = [&](std::ostream& s) {
      ex::write_temperature_sweep(
          {{o.dA, o.dB}, o.betas, o.seed, o.tEnd, o.nPoints, o.allowDegenerate}, s);
    };
  });

  auto* haar = app.add_subcommand("haar-stats", "Analytic Haar moments against Monte Carlo");
  add_dims(haar, o, 2);
  haar->add_option("--state", o.state, "schmidt (uses --z) or gibbs (uses --beta)")
      ->check(CLI::IsMember({"schmidt", "gibbs"}))
      ->capture_default_str();
  haar->add_option("--z", o.z, "Schmidt weight of |psi_z>")->capture_default_str();
  haar->add_option("--beta", o.beta, "Inverse temperature for --state gibbs")
      ->capture_default_str();
  haar->add_option("--n-samples", o.nSamples, "Number of Haar unitaries")->capture_default_str();
  add_seed(haar, o);
  add_allow_degenerate(haar, o);
  add_output(haar, o);
  haar->callback([&] {
    job = [&](std::ostream& s) {
      ex::HaarStatsConfig c;
      c.dims = {o.dA, o.dB};
      c.state = o.state == "gibbs" ? ex::StateKind::Gibbs : ex::StateKind::Schmidt;
      c.z = o.z;
      c.beta = o.beta;
      c.nSamples = o.nSamples;
      c.seed = o.seed;
      c.allowDegenerate = o.allowDegenerate;
      ex::write_haar_stats(c, s);
    };
  });

  auto* eff = app.add_subcommand("effective-dim", "Effective environment dimension from time averages");
  add_dims(eff, o, 8);
  eff->add_option("--beta", o.beta, "Inverse temperature")->capture_default_str();
  eff->add_option("--n-hamiltonians", o.nHamiltonians)->capture_default_str();
  add_seed(eff, o);
  add_grid(eff, o);
  eff->add_option("--convergence-tolerance", o.convergenceTolerance,
                  "Relative change allowed when halving the averaging window")
      ->capture_default_str();
  eff->add_flag("--inject-uncoupled", o.injectUncoupled,
                "Append a row for an uncoupled Hamiltonian (expects time-average-zero)");
  add_output(eff, o);
  eff->callback([&] {
    job = [&](std::ostream& s) {
      ex::write_effective_dim({{o.dA, o.dB}, o.beta, o.nHamiltonians, o.seed, o.tEnd, o.nPoints,
                               o.convergenceTolerance, o.injectUncoupled},
                              s);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << ex::kToolVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalidConfig;
  }

  try {
    std::ostringstream buffer;
    job(buffer);
    if (o.output == "-") {
      out << buffer.str();
    } else {
      std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
      if (!file) {
        fmt::print(err, "error: cannot open {} for writing\n", o.output);
        return kInvalidConfig;
      }
      file << buffer.str();
    }
    return kSuccess;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code_for(e);
  }
}

}  // namespace discord::cli
