// fdnet: command-line driver for the mixed HD/FD network model.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error,
// 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "fdnet/analytic.hpp"
#include "fdnet/throughput.hpp"

namespace {

using namespace fdnet;
using namespace fdnet::cli;

constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericFailure = 3;

struct PointFlags {
  double lambda = 0.1;
  double theta_db = 0.0;
  double R = 1.0;
  double alpha = 4.0;
  std::string beta_db = "perfect";
  double K_db = kFigureKdb;

  NetworkConfig network() const { return {lambda, db_to_linear(theta_db), R, alpha}; }

  SelfInterferenceModel self_interference() const {
    double beta = 0.0;
    if (beta_db != "perfect") {
      try {
        beta = db_to_linear(-std::stod(beta_db));
      } catch (const std::exception&) {
        throw ConfigError("--beta-db", "expected a number of dB or 'perfect'");
      }
    }
    return {beta, db_to_linear(K_db)};
  }
};

void add_point_flags(CLI::App* cmd, PointFlags& f, bool with_beta) {
  cmd->add_option("--lambda", f.lambda, "node density")->capture_default_str();
  cmd->add_option("--theta-db", f.theta_db, "SIR threshold in dB")->capture_default_str();
  cmd->add_option("--R", f.R, "link distance")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "path-loss exponent")->capture_default_str();
  if (with_beta) {
    cmd->add_option("--beta-db", f.beta_db, "self-interference cancellation in dB, or 'perfect'")
        ->capture_default_str();
  }
  cmd->add_option("--K-db", f.K_db, "propagation constant K in dB")->capture_default_str();
}

struct SpecOverrides {
  std::optional<std::string> output;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> confidence;

  void apply(ExperimentSpec& spec) const {
    if (output) spec.output = *output;
    if (trials || seed || confidence) {
      if (!spec.sim) spec.sim = SimConfig{};
      if (trials) spec.sim->trials = *trials;
      if (seed) spec.sim->seed = *seed;
      if (confidence) spec.sim->confidence_level = *confidence;
    }
    spec.validate();
  }
};

void add_override_flags(CLI::App* cmd, SpecOverrides& o) {
  cmd->add_option("--output", o.output, "CSV output path (overrides the spec)");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--confidence", o.confidence, "confidence level of the intervals");
}

std::filesystem::path report_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".report.json");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Throughput and success probability of mixed half/full-duplex Poisson networks"};
  app.require_subcommand(1);

  std::string figure_id;
  std::string out_dir = ".";
  FigureOptions fig_opts;
  auto* figure = app.add_subcommand("figure", "write the CSV series of one figure (fig1..fig5)");
  figure->add_option("id", figure_id, "figure id")->required();
  figure->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  figure->add_option("--step-db", fig_opts.step_db, "theta grid step in dB")->capture_default_str();
  figure->add_option("--mc-trials", fig_opts.mc_trials,
                     "add Monte Carlo columns to fig1..fig3 with this many trials per point");
  figure->add_option("--seed", fig_opts.seed, "Monte Carlo seed")->capture_default_str();

  std::string sweep_file;
  SpecOverrides sweep_over;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep from a JSON spec");
  sweep->add_option("spec", sweep_file, "spec file")->required()->check(CLI::ExistingFile);
  add_override_flags(sweep, sweep_over);

  std::string validate_file;
  SpecOverrides validate_over;
  auto* validate_cmd =
      app.add_subcommand("validate", "check analytic success probabilities against Monte Carlo");
  validate_cmd->add_option("spec", validate_file, "spec file")->required()->check(CLI::ExistingFile);
  add_override_flags(validate_cmd, validate_over);

  PointFlags beta_flags;
  auto* beta_c = app.add_subcommand("beta-c", "critical SIPR at which FD and HD break even");
  add_point_flags(beta_c, beta_flags, false);

  PointFlags tmax_flags;
  auto* tmax = app.add_subcommand("tmax", "maximal throughput and its regime");
  add_point_flags(tmax, tmax_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (figure->parsed()) {
      for (const auto& path : run_figure(parse_figure_id(figure_id), out_dir, fig_opts)) {
        std::cout << path.string() << '\n';
      }
      return 0;
    }

    if (sweep->parsed()) {
      ExperimentSpec spec = load_spec(sweep_file);
      sweep_over.apply(spec);
      write_csv(run_sweep(spec), spec.output);
      std::cout << spec.output << '\n';
      return 0;
    }

    if (validate_cmd->parsed()) {
      ExperimentSpec spec = load_spec(validate_file);
      validate_over.apply(spec);
      const auto result = validate(spec);
      write_csv(result.table, spec.output);
      const auto report_file = report_path(spec.output);
      std::ofstream report(report_file, std::ios::binary);
      if (!report) throw std::runtime_error("cannot write " + report_file.string());
      report << result.report.to_json().dump(2) << '\n';
      std::cout << result.report.summary();
      return result.report.passed() ? 0 : kExitValidationFailure;
    }

    if (beta_c->parsed()) {
      const NetworkConfig cfg = beta_flags.network();
      const double value = critical_beta(cfg, db_to_linear(beta_flags.K_db));
      write_csv(Table{{"theta_db", "R", "alpha", "K_db", "beta_c", "cancellation_db"},
                      {{format_number(beta_flags.theta_db), format_number(cfg.link_distance()),
                        format_number(cfg.alpha()), format_number(beta_flags.K_db),
                        format_number(value), format_number(-linear_to_db(value))}}},
                std::cout);
      return 0;
    }

    if (tmax->parsed()) {
      const NetworkConfig cfg = tmax_flags.network();
      const SelfInterferenceModel si = tmax_flags.self_interference();
      const auto opt = t_max(cfg, si);
      const auto hd = t_hd_max(cfg);
      const auto fd = t_fd_max(cfg, si);
      const auto gain = throughput_gain(cfg, si);
      const auto [H, F] = functionals(cfg);
      write_csv(Table{{"regime", "t_max", "lambda1_opt", "lambda2_opt", "t_hd_max", "t_fd_max",
                       "tg", "kappa", "H", "F"},
                      {{to_string(opt.regime), format_number(opt.t_max),
                        format_number(opt.optimal.lambda1), format_number(opt.optimal.lambda2),
                        format_number(hd.t), format_number(fd.t), format_number(gain.tg),
                        format_number(kappa(cfg, si)), format_number(H), format_number(F)}}},
                std::cout);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const QuadratureError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumericFailure;
  } catch (const InversionError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumericFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    // I/O problems: bad output paths are a configuration issue.
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return 0;
}
