#pragma once

// Experiment specs, sweeps, validation reports and figure reproduction for
// the fdnet command-line tool. All dB <-> linear conversion happens here.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fdnet/model.hpp"
#include "fdnet/simulator.hpp"

namespace fdnet::cli {

inline constexpr double kFigureKdb = -34.0;  // G_tx = G_rx = 2, f_c = 2.4 GHz

double db_to_linear(double db);
double linear_to_db(double x);

/// Invalid experiment configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SweepGrid {
  std::string variable = "theta_db";
  double start = -10.0;
  double stop = 20.0;
  std::size_t count = 61;
  bool log_spacing = false;

  std::vector<double> values() const;
};

struct ExperimentSpec {
  double lambda = 0.1;
  double theta_db = 0.0;
  double link_distance = 1.0;
  double alpha = 4.0;
  double p1 = 0.5;
  double p2 = 0.5;
  std::optional<double> beta_db;  // cancellation in dB; nullopt = perfect
  double K_db = kFigureKdb;
  SweepGrid sweep;
  std::optional<SimConfig> sim;
  std::string output = "sweep.csv";
  double debug_f_scale = 1.0;  // negative control: corrupts analytic F

  void validate() const;
};

ExperimentSpec parse_spec(const nlohmann::json& doc);
ExperimentSpec load_spec(const std::filesystem::path& path);

/// Formatted CSV table; cells are pre-rendered strings.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_number(double v);
void write_csv(const Table& table, std::ostream& out);
void write_csv(const Table& table, const std::filesystem::path& path);

Table run_sweep(const ExperimentSpec& spec);

struct PointCheck {
  double x;
  double analytic;
  EstimateWithCI mc;
  bool pass;
};

struct ValidationReport {
  std::string variable;
  double confidence = 0.0;
  std::size_t trials = 0;
  std::vector<PointCheck> points;
  std::size_t failures = 0;
  std::size_t allowed_failures = 0;
  std::vector<std::string> warnings;

  bool passed() const noexcept { return failures <= allowed_failures; }
  nlohmann::json to_json() const;
  std::string summary() const;
};

/// Largest miss count still consistent with `confidence`-level intervals:
/// smallest k with P(Binomial(n, 1 - confidence) > k) <= 0.01.
std::size_t allowed_ci_misses(std::size_t n, double confidence);

struct ValidationResult {
  Table table;
  ValidationReport report;
};

ValidationResult validate(const ExperimentSpec& spec);

enum class FigureId { Fig1, Fig2, Fig3, Fig4, Fig5 };

FigureId parse_figure_id(const std::string& id);

struct FigureOptions {
  double step_db = 0.5;
  std::size_t mc_trials = 0;  // 0 disables Monte Carlo columns
  std::uint64_t seed = 1;
};

/// Named CSV tables for one figure.
struct FigureOutput {
  std::string name;
  Table table;
};

std::vector<FigureOutput> build_figure(FigureId id, const FigureOptions& opts = {});

/// Writes build_figure() tables as <out_dir>/<name>.csv and returns the paths.
std::vector<std::filesystem::path> run_figure(FigureId id, const std::filesystem::path& out_dir,
                                              const FigureOptions& opts = {});

}  // namespace fdnet::cli
