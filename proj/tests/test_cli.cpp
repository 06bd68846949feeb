#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "experiment.hpp"
#include "fdnet/throughput.hpp"

using namespace fdnet;
using namespace fdnet::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fdnet_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return i;
  }
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

double cell(const Table& t, std::size_t row, const std::string& name) {
  return std::stod(t.rows[row][column(t, name)]);
}

std::string config_error_field(const json& doc) {
  try {
    parse_spec(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FDNET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json fig1_spec() {
  return json::parse(R"({
    "network": {"lambda": 0.1, "theta_db": 0, "R": 1, "alpha": 4},
    "mix": {"p1": 0.5, "p2": 0.5},
    "self_interference": {"beta_db": "perfect", "K_db": -34},
    "sweep": {"variable": "theta_db", "start": -10, "stop": 20, "count": 7}
  })");
}

}  // namespace

TEST(Decibels, RoundTrip) {
  for (double db = -30.0; db <= 60.0; db += 0.7) {
    EXPECT_NEAR(linear_to_db(db_to_linear(db)), db, 1e-12);
  }
  EXPECT_DOUBLE_EQ(db_to_linear(10.0), 10.0);
}

TEST(SweepGrid, LinearAndLogSpacing) {
  const auto lin = SweepGrid{"theta_db", -10.0, 20.0, 61, false}.values();
  ASSERT_EQ(lin.size(), 61u);
  EXPECT_EQ(lin.front(), -10.0);
  EXPECT_EQ(lin.back(), 20.0);
  EXPECT_NEAR(lin[1] - lin[0], 0.5, 1e-12);
  const auto lg = SweepGrid{"R", 1.0, 1000.0, 4, true}.values();
  EXPECT_NEAR(lg[1], 10.0, 1e-12);
  EXPECT_NEAR(lg[2], 100.0, 1e-10);
}

TEST(ParseSpec, DefaultsAndValues) {
  const auto spec = parse_spec(fig1_spec());
  EXPECT_EQ(spec.lambda, 0.1);
  EXPECT_FALSE(spec.beta_db.has_value());
  EXPECT_FALSE(spec.sim.has_value());
  EXPECT_EQ(spec.sweep.count, 7u);
  json d = fig1_spec();
  d["self_interference"]["beta_db"] = 80;
  d["sim"] = {{"trials", 500}, {"seed", 3}};
  const auto s2 = parse_spec(d);
  EXPECT_EQ(*s2.beta_db, 80.0);
  EXPECT_EQ(s2.sim->trials, 500u);
  EXPECT_EQ(s2.sim->seed, 3u);
  EXPECT_EQ(s2.sim->confidence_level, 0.99);
}

TEST(ParseSpec, ErrorsNameTheField) {
  json d = fig1_spec();
  d["sweep"]["variable"] = "gamma";
  EXPECT_EQ(config_error_field(d), "sweep.variable");
  d = fig1_spec();
  d["sweep"]["count"] = 1;
  EXPECT_EQ(config_error_field(d), "sweep.count");
  d = fig1_spec();
  d["sweep"]["spacing"] = "log";
  EXPECT_EQ(config_error_field(d), "sweep.spacing");
  d = fig1_spec();
  d["network"]["alpha"] = 2;
  EXPECT_EQ(config_error_field(d), "network.alpha");
  d = fig1_spec();
  d["network"]["lambda"] = "dense";
  EXPECT_EQ(config_error_field(d), "network.lambda");
  d = fig1_spec();
  d["mix"]["p3"] = 0.1;
  EXPECT_EQ(config_error_field(d), "mix.p3");
  d = fig1_spec();
  d["mix"]["p1"] = 0.8;
  EXPECT_EQ(config_error_field(d), "mix");
  d = fig1_spec();
  d["self_interference"]["beta_db"] = "good";
  EXPECT_EQ(config_error_field(d), "self_interference.beta_db");
  d = fig1_spec();
  d["sim"] = {{"trials", 0}};
  EXPECT_EQ(config_error_field(d), "sim.trials");
}

TEST(RunSweep, AnalyticOnlySchema) {
  const Table t = run_sweep(parse_spec(fig1_spec()));
  const std::vector<std::string> expected = {
      "theta_db", "theta", "ps_hd", "ps_fd", "ps", "ps_lower", "ps_upper", "kappa", "H", "F",
      "tg", "tg_lower", "tg_upper", "t_max", "regime", "beta_c"};
  EXPECT_EQ(t.header, expected);
  ASSERT_EQ(t.rows.size(), 7u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(t.rows[i].size(), expected.size());
    EXPECT_LE(cell(t, i, "ps_lower"), cell(t, i, "ps"));
    EXPECT_LE(cell(t, i, "ps"), cell(t, i, "ps_upper"));
    EXPECT_NEAR(linear_to_db(cell(t, i, "theta")), cell(t, i, "theta_db"), 1e-9);
    EXPECT_EQ(t.rows[i][column(t, "regime")], "FD_ONLY");
  }
}

TEST(RunSweep, MonteCarloColumns) {
  json d = fig1_spec();
  d["sweep"]["count"] = 3;
  d["sim"] = {{"trials", 2000}, {"seed", 5}};
  const Table t = run_sweep(parse_spec(d));
  for (const char* c : {"mc_ps", "mc_std_error", "ci_low", "ci_high", "trials"}) column(t, c);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_LE(cell(t, i, "ci_low"), cell(t, i, "mc_ps"));
    EXPECT_LE(cell(t, i, "mc_ps"), cell(t, i, "ci_high"));
    EXPECT_EQ(t.rows[i][column(t, "trials")], "2000");
  }
}

TEST(RunSweep, BetaSweepCrossesBreakEvenOnce) {
  json d = fig1_spec();
  d["sweep"] = {{"variable", "beta_db"}, {"start", 20}, {"stop", 60}, {"count", 81}};
  const Table t = run_sweep(parse_spec(d));
  int crossings = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if ((cell(t, i - 1, "tg") - 1.0) * (cell(t, i, "tg") - 1.0) < 0.0) ++crossings;
    EXPECT_GE(cell(t, i, "tg"), cell(t, i - 1, "tg"));
  }
  EXPECT_EQ(crossings, 1);
  // The crossing brackets the critical cancellation.
  const double beta_c = critical_beta(NetworkConfig(0.1, 1.0, 1.0, 4.0), db_to_linear(-34.0));
  const double crit_db = -linear_to_db(beta_c);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(cell(t, i, "tg") > 1.0, cell(t, i, "beta_db") > crit_db);
  }
}

TEST(RunSweep, OtherVariables) {
  for (const char* var : {"lambda", "R", "alpha", "p1", "p2"}) {
    json d = fig1_spec();
    d["mix"] = {{"p1", 0.3}, {"p2", 0.3}};
    const double lo = std::string(var) == "alpha" ? 2.5 : 0.1;
    const double hi = std::string(var) == "alpha" ? 5.0 : 0.6;
    d["sweep"] = {{"variable", var}, {"start", lo}, {"stop", hi}, {"count", 4}};
    const Table t = run_sweep(parse_spec(d));
    EXPECT_EQ(t.header.front(), var);
    EXPECT_EQ(t.rows.size(), 4u);
  }
  json bad = fig1_spec();
  bad["sweep"] = {{"variable", "p1"}, {"start", 0.1}, {"stop", 0.9}, {"count", 3}};
  EXPECT_THROW(run_sweep(parse_spec(bad)), ConfigError);
}

TEST(Validate, RequiresSimBlock) {
  EXPECT_THROW(validate(parse_spec(fig1_spec())), ConfigError);
}

TEST(Validate, AllowedMissBudget) {
  EXPECT_EQ(allowed_ci_misses(13, 0.99), 1u);
  EXPECT_EQ(allowed_ci_misses(100, 0.99), 4u);
}

TEST(Validate, PassesOnFigureOneConfig) {
  json d = fig1_spec();
  d["sim"] = {{"trials", 20000}, {"seed", 2}};
  const auto r = validate(parse_spec(d));
  EXPECT_TRUE(r.report.passed()) << r.report.summary();
  EXPECT_TRUE(r.report.warnings.empty());
  EXPECT_EQ(r.table.rows.size(), 7u);
  EXPECT_EQ(r.report.to_json()["status"], "pass");
}

TEST(Validate, CorruptedFunctionalFails) {
  json d = fig1_spec();
  d["sim"] = {{"trials", 20000}, {"seed", 2}};
  d["debug"] = {{"f_scale", 1.1}};
  const auto r = validate(parse_spec(d));
  EXPECT_FALSE(r.report.passed()) << r.report.summary();
  EXPECT_EQ(r.report.to_json()["status"], "fail");
}

TEST(Validate, LowTrialWarning) {
  json d = fig1_spec();
  d["sweep"]["count"] = 2;
  d["sim"] = {{"trials", 100}};
  const auto r = validate(parse_spec(d));
  ASSERT_EQ(r.report.warnings.size(), 1u);
  EXPECT_NE(r.report.warnings[0].find("low trial count"), std::string::npos);
  EXPECT_NE(r.report.summary().find("warning: low trial count"), std::string::npos);
}

TEST(Figures, FigureOne) {
  const auto out = build_figure(FigureId::Fig1);
  ASSERT_EQ(out.size(), 1u);
  const Table& t = out[0].table;
  EXPECT_EQ(t.header, (std::vector<std::string>{"theta_db", "ps_exact", "ps_lower", "ps_upper"}));
  ASSERT_EQ(t.rows.size(), 61u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_LE(cell(t, i, "ps_lower"), cell(t, i, "ps_exact"));
    EXPECT_LE(cell(t, i, "ps_exact"), cell(t, i, "ps_upper"));
  }
  EXPECT_EQ(cell(t, 0, "theta_db"), -10.0);
  EXPECT_EQ(cell(t, 60, "theta_db"), 20.0);
}

TEST(Figures, FigureTwoAndThree) {
  const Table f2 = build_figure(FigureId::Fig2)[0].table;
  EXPECT_EQ(f2.header, (std::vector<std::string>{"theta_db", "ps_fd_only", "ps_fd_lower",
                                                 "ps_fd_upper", "ps_hd_only"}));
  for (std::size_t i = 0; i < f2.rows.size(); ++i) {
    EXPECT_LT(cell(f2, i, "ps_fd_only"), cell(f2, i, "ps_hd_only"));
  }
  const Table f3 = build_figure(FigureId::Fig3)[0].table;
  for (std::size_t i = 0; i < f3.rows.size(); ++i) {
    EXPECT_LT(cell(f3, i, "ps_fd_only_beta1e-4"), cell(f3, i, "ps_fd_only_beta0"));
  }
}

TEST(Figures, FigureFourSlope) {
  const auto out = build_figure(FigureId::Fig4);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].name, "fig4_alpha3_theta0db");
  EXPECT_EQ(out[3].name, "fig4_alpha4_theta10db");
  for (const auto& f : out) {
    const double alpha = f.name.find("alpha3") != std::string::npos ? 3.0 : 4.0;
    const Table& t = f.table;
    EXPECT_EQ(t.header, (std::vector<std::string>{"beta_c_db", "R"}));
    // log10 R against log10 beta_c has slope -1/alpha; beta_c_db = -10 log10 beta_c.
    const std::size_t last = t.rows.size() - 1;
    const double dlogR = std::log10(cell(t, last, "R")) - std::log10(cell(t, 0, "R"));
    const double dlogb = -(cell(t, last, "beta_c_db") - cell(t, 0, "beta_c_db")) / 10.0;
    EXPECT_NEAR(dlogR / dlogb, -1.0 / alpha, 1e-6);
  }
}

TEST(Figures, FigureFiveGainDipsBelowOne) {
  const auto out = build_figure(FigureId::Fig5);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].name, "fig5_beta1e-5");
  const Table& t = out[0].table;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (cell(t, i, "theta_db") > 10.0) {
      EXPECT_LT(cell(t, i, "tg"), 1.0);
    }
  }
  const Table& perfect = out[2].table;
  for (std::size_t i = 0; i < perfect.rows.size(); ++i) {
    EXPECT_LT(cell(perfect, i, "tg"), 4.0 / 3.0);
    EXPECT_GT(cell(perfect, i, "tg"), 1.0);
  }
}

TEST(Figures, WrittenFilesAreReproducible) {
  const fs::path a = scratch_dir("fig_a");
  const fs::path b = scratch_dir("fig_b");
  const FigureOptions opts{.step_db = 5.0, .mc_trials = 500, .seed = 4};
  const auto pa = run_figure(FigureId::Fig1, a, opts);
  const auto pb = run_figure(FigureId::Fig1, b, opts);
  ASSERT_EQ(pa.size(), 1u);
  EXPECT_EQ(pa[0].filename(), "fig1.csv");
  EXPECT_EQ(slurp(pa[0]), slurp(pb[0]));
  EXPECT_NE(slurp(pa[0]).find("mc_ps"), std::string::npos);
  EXPECT_THROW(parse_figure_id("fig6"), ConfigError);
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch_dir("binary");
  json good = fig1_spec();
  good["sweep"]["count"] = 3;
  good["sim"] = {{"trials", 4000}, {"seed", 1}};
  good["output"] = (dir / "ok.csv").string();
  std::ofstream(dir / "good.json") << good.dump();
  EXPECT_EQ(run_cli("validate " + (dir / "good.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "ok.report.json"));

  json corrupt = good;
  corrupt["debug"] = {{"f_scale", 1.5}};
  corrupt["output"] = (dir / "bad.csv").string();
  std::ofstream(dir / "corrupt.json") << corrupt.dump();
  EXPECT_EQ(run_cli("validate " + (dir / "corrupt.json").string()), 1);

  json invalid = good;
  invalid["sweep"]["variable"] = "gamma";
  std::ofstream(dir / "invalid.json") << invalid.dump();
  EXPECT_EQ(run_cli("sweep " + (dir / "invalid.json").string()), 2);
  EXPECT_EQ(run_cli("sweep " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("figure fig9"), 2);
  EXPECT_EQ(run_cli("beta-c --alpha 1.5"), 2);
  EXPECT_EQ(run_cli("tmax --beta-db 80"), 0);
  EXPECT_EQ(run_cli("figure fig5 --out-dir " + (dir / "figs").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "figs" / "fig5_beta0.csv"));
}
