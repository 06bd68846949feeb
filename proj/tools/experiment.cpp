#include "experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fdnet/analytic.hpp"
#include "fdnet/parallel.hpp"
#include "fdnet/throughput.hpp"

namespace fdnet::cli {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

std::vector<double> SweepGrid::values() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = log_spacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                         : start + t * (stop - start);
  }
  // Pin the endpoints exactly.
  if (!out.empty()) {
    out.front() = start;
    out.back() = stop;
  }
  return out;
}

namespace {

const std::set<std::string> kSweepVariables = {"theta_db", "lambda", "R",  "alpha",
                                               "beta_db",  "p1",     "p2"};

void reject_unknown(const json& obj, const std::string& section,
                    std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(section + "." + it.key(), "unknown key");
  }
}

const json& section(const json& doc, const char* name) {
  if (!doc.contains(name)) {
    static const json empty = json::object();
    return empty;
  }
  const json& s = doc.at(name);
  if (!s.is_object()) throw ConfigError(name, "must be an object");
  return s;
}

double number_field(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "must be a number");
  return v.get<double>();
}

}  // namespace

void ExperimentSpec::validate() const {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be positive");
  };
  positive(lambda, "network.lambda");
  positive(link_distance, "network.R");
  if (!(alpha > 2.0)) throw ConfigError("network.alpha", "must exceed 2");
  if (!std::isfinite(theta_db)) throw ConfigError("network.theta_db", "must be finite");
  if (p1 < 0.0 || p2 < 0.0 || p1 + p2 > 1.0 + 1e-12) {
    throw ConfigError("mix", "need p1, p2 >= 0 and p1 + p2 <= 1");
  }
  if (beta_db && *beta_db < 0.0) {
    throw ConfigError("self_interference.beta_db", "cancellation must be >= 0 dB");
  }
  if (!kSweepVariables.contains(sweep.variable)) {
    throw ConfigError("sweep.variable", "unknown sweep variable '" + sweep.variable + "'");
  }
  if (sweep.count < 2) throw ConfigError("sweep.count", "must be >= 2");
  if (sweep.log_spacing && !(sweep.start > 0.0 && sweep.stop > 0.0)) {
    throw ConfigError("sweep.spacing", "log spacing requires positive endpoints");
  }
  if (sim) {
    if (sim->trials == 0) throw ConfigError("sim.trials", "must be >= 1");
    if (!(sim->truncation_epsilon > 0.0)) throw ConfigError("sim.epsilon", "must be positive");
    if (!(sim->confidence_level > 0.0 && sim->confidence_level < 1.0)) {
      throw ConfigError("sim.confidence", "must lie in (0, 1)");
    }
  }
  if (!(debug_f_scale > 0.0)) throw ConfigError("debug.f_scale", "must be positive");
}

ExperimentSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "spec must be a JSON object");
  reject_unknown(doc, "<root>",
                 {"network", "mix", "self_interference", "sweep", "sim", "output", "debug"});
  ExperimentSpec spec;

  const json& net = section(doc, "network");
  reject_unknown(net, "network", {"lambda", "theta_db", "R", "alpha"});
  spec.lambda = number_field(net, "network", "lambda", spec.lambda);
  spec.theta_db = number_field(net, "network", "theta_db", spec.theta_db);
  spec.link_distance = number_field(net, "network", "R", spec.link_distance);
  spec.alpha = number_field(net, "network", "alpha", spec.alpha);

  const json& mix = section(doc, "mix");
  reject_unknown(mix, "mix", {"p1", "p2"});
  spec.p1 = number_field(mix, "mix", "p1", spec.p1);
  spec.p2 = number_field(mix, "mix", "p2", spec.p2);

  const json& si = section(doc, "self_interference");
  reject_unknown(si, "self_interference", {"beta_db", "K_db"});
  if (si.contains("beta_db")) {
    const json& b = si.at("beta_db");
    if (b.is_string() && b.get<std::string>() == "perfect") {
      spec.beta_db.reset();
    } else if (b.is_number()) {
      spec.beta_db = b.get<double>();
    } else {
      throw ConfigError("self_interference.beta_db", "must be a number or \"perfect\"");
    }
  }
  spec.K_db = number_field(si, "self_interference", "K_db", spec.K_db);

  const json& sweep = section(doc, "sweep");
  reject_unknown(sweep, "sweep", {"variable", "start", "stop", "count", "spacing"});
  if (sweep.contains("variable")) {
    if (!sweep.at("variable").is_string()) throw ConfigError("sweep.variable", "must be a string");
    spec.sweep.variable = sweep.at("variable").get<std::string>();
  }
  spec.sweep.start = number_field(sweep, "sweep", "start", spec.sweep.start);
  spec.sweep.stop = number_field(sweep, "sweep", "stop", spec.sweep.stop);
  if (sweep.contains("count")) {
    const json& c = sweep.at("count");
    if (!c.is_number_integer() || c.get<long long>() < 0) {
      throw ConfigError("sweep.count", "must be a non-negative integer");
    }
    spec.sweep.count = c.get<std::size_t>();
  }
  if (sweep.contains("spacing")) {
    const json& s = sweep.at("spacing");
    const std::string v = s.is_string() ? s.get<std::string>() : "";
    if (v != "linear" && v != "log") throw ConfigError("sweep.spacing", "must be linear or log");
    spec.sweep.log_spacing = v == "log";
  }

  if (doc.contains("sim") && !doc.at("sim").is_null()) {
    const json& sim = section(doc, "sim");
    reject_unknown(sim, "sim", {"trials", "seed", "epsilon", "confidence"});
    SimConfig cfg;
    if (sim.contains("trials")) {
      const json& t = sim.at("trials");
      if (!t.is_number_integer() || t.get<long long>() < 0) {
        throw ConfigError("sim.trials", "must be a non-negative integer");
      }
      cfg.trials = t.get<std::size_t>();
    }
    if (sim.contains("seed")) {
      if (!sim.at("seed").is_number_integer()) throw ConfigError("sim.seed", "must be an integer");
      cfg.seed = sim.at("seed").get<std::uint64_t>();
    }
    cfg.truncation_epsilon = number_field(sim, "sim", "epsilon", cfg.truncation_epsilon);
    cfg.confidence_level = number_field(sim, "sim", "confidence", cfg.confidence_level);
    spec.sim = cfg;
  }

  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) throw ConfigError("output", "must be a string");
    spec.output = doc.at("output").get<std::string>();
  }

  const json& debug = section(doc, "debug");
  reject_unknown(debug, "debug", {"f_scale"});
  spec.debug_f_scale = number_field(debug, "debug", "f_scale", spec.debug_f_scale);

  spec.validate();
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", path.string() + ": " + e.what());
  }
  return parse_spec(doc);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

void write_csv(const Table& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(table, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

// Network state at one grid point.
struct PointSetup {
  NetworkConfig cfg;
  DuplexMix mix;
  SelfInterferenceModel si;
};

PointSetup point_setup(const ExperimentSpec& spec, double x) {
  ExperimentSpec s = spec;
  const std::string& v = spec.sweep.variable;
  if (v == "theta_db") s.theta_db = x;
  if (v == "lambda") s.lambda = x;
  if (v == "R") s.link_distance = x;
  if (v == "alpha") s.alpha = x;
  if (v == "beta_db") s.beta_db = x;
  if (v == "p1") s.p1 = x;
  if (v == "p2") s.p2 = x;
  try {
    s.validate();
    const double beta = s.beta_db ? db_to_linear(-*s.beta_db) : 0.0;
    return {NetworkConfig(s.lambda, db_to_linear(s.theta_db), s.link_distance, s.alpha),
            DuplexMix(1.0 - s.p1 - s.p2, s.p1, s.p2), SelfInterferenceModel(beta, db_to_linear(s.K_db))};
  } catch (const ConfigError& e) {
    throw ConfigError("sweep", "grid point " + format_number(x) + " invalid (" + e.what() + ")");
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sweep", "grid point " + format_number(x) + " invalid (" + e.what() + ")");
  } catch (const std::domain_error& e) {
    throw ConfigError("sweep", "grid point " + format_number(x) + " invalid (" + e.what() + ")");
  }
}

const std::vector<std::string> kAnalyticColumns = {
    "theta", "ps_hd", "ps_fd", "ps", "ps_lower", "ps_upper", "kappa", "H", "F",
    "tg",    "tg_lower", "tg_upper", "t_max", "regime", "beta_c"};

const std::vector<std::string> kMonteCarloColumns = {"mc_ps", "mc_std_error", "ci_low", "ci_high",
                                                     "trials"};

std::vector<std::string> analytic_cells(const PointSetup& p) {
  const auto [H, F] = functionals(p.cfg);
  const auto bounds = ps_bounds(p.cfg, p.mix, p.si, LinkMode::Unconditional);
  const auto gain = throughput_gain(p.cfg, p.si);
  const auto opt = t_max(p.cfg, p.si);
  return {format_number(p.cfg.theta()),
          format_number(ps_hd(p.cfg, p.mix)),
          format_number(ps_fd(p.cfg, p.mix, p.si)),
          format_number(ps_unconditional(p.cfg, p.mix, p.si)),
          format_number(bounds.lower),
          format_number(bounds.upper),
          format_number(kappa(p.cfg, p.si)),
          format_number(H),
          format_number(F),
          format_number(gain.tg),
          format_number(gain.lower),
          format_number(gain.upper),
          format_number(opt.t_max),
          to_string(opt.regime),
          format_number(critical_beta(p.cfg, p.si.K()))};
}

std::vector<std::string> mc_cells(const EstimateWithCI& e) {
  return {format_number(e.estimate), format_number(e.std_error), format_number(e.ci_low),
          format_number(e.ci_high), std::to_string(e.trials)};
}

// Grid points get distinct, index-derived MC streams.
constexpr std::uint64_t kSweepStreamBase = 1000;

EstimateWithCI point_estimate(const PointSetup& p, const SimConfig& sim, std::size_t index) {
  return estimate_ps(p.cfg, p.mix, p.si, LinkMode::Unconditional, sim, kSweepStreamBase + index);
}

}  // namespace

Table run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const auto xs = spec.sweep.values();
  std::vector<PointSetup> points;
  points.reserve(xs.size());
  for (double x : xs) points.push_back(point_setup(spec, x));

  Table table;
  table.header.push_back(spec.sweep.variable);
  table.header.insert(table.header.end(), kAnalyticColumns.begin(), kAnalyticColumns.end());
  if (spec.sim) {
    table.header.insert(table.header.end(), kMonteCarloColumns.begin(), kMonteCarloColumns.end());
  }
  table.rows.resize(xs.size());

  auto fill = [&](std::size_t i) {
    auto& row = table.rows[i];
    row.push_back(format_number(xs[i]));
    const auto cells = analytic_cells(points[i]);
    row.insert(row.end(), cells.begin(), cells.end());
  };
  // Rows are written by index, so completion order does not matter.
  parallel_for(xs.size(), fill);
  if (spec.sim) {
    // Each estimate is already parallel over trials.
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto cells = mc_cells(point_estimate(points[i], *spec.sim, i));
      table.rows[i].insert(table.rows[i].end(), cells.begin(), cells.end());
    }
  }
  return table;
}

std::size_t allowed_ci_misses(std::size_t n, double confidence) {
  const double q = 1.0 - confidence;
  // P(X = k) for X ~ Binomial(n, q), accumulated until the tail is <= 1%.
  double pmf = std::pow(1.0 - q, static_cast<double>(n));
  double cdf = pmf;
  std::size_t k = 0;
  while (1.0 - cdf > 0.01 && k < n) {
    pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * q / (1.0 - q);
    cdf += pmf;
    ++k;
  }
  return k;
}

json ValidationReport::to_json() const {
  json doc;
  doc["variable"] = variable;
  doc["confidence"] = confidence;
  doc["trials"] = trials;
  doc["failures"] = failures;
  doc["allowed_failures"] = allowed_failures;
  doc["status"] = passed() ? "pass" : "fail";
  doc["warnings"] = warnings;
  json pts = json::array();
  for (const auto& p : points) {
    pts.push_back({{"x", p.x},
                   {"analytic", p.analytic},
                   {"mc", p.mc.estimate},
                   {"std_error", p.mc.std_error},
                   {"ci_low", p.mc.ci_low},
                   {"ci_high", p.mc.ci_high},
                   {"pass", p.pass}});
  }
  doc["points"] = pts;
  return doc;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  for (const auto& p : points) {
    out << (p.pass ? "  ok   " : "  MISS ") << variable << '=' << format_number(p.x)
        << "  analytic=" << format_number(p.analytic) << "  mc=" << format_number(p.mc.estimate)
        << "  ci=[" << format_number(p.mc.ci_low) << ", " << format_number(p.mc.ci_high) << "]\n";
  }
  out << (passed() ? "PASS" : "FAIL") << ": " << points.size() - failures << '/' << points.size()
      << " points inside the " << format_number(100.0 * confidence) << "% CI ("
      << failures << " misses, " << allowed_failures << " allowed)\n";
  return out.str();
}

ValidationResult validate(const ExperimentSpec& spec) {
  if (!spec.sim) throw ConfigError("sim", "validate requires a sim block");
  spec.validate();
  const SimConfig& sim = *spec.sim;
  const auto xs = spec.sweep.values();

  ValidationResult result;
  auto& report = result.report;
  report.variable = spec.sweep.variable;
  report.confidence = sim.confidence_level;
  report.trials = sim.trials;
  if (EstimateWithCI{.trials = sim.trials}.low_trial_count()) {
    report.warnings.push_back("low trial count (" + std::to_string(sim.trials) +
                              "): confidence intervals need well over 100 trials");
  }
  if (spec.debug_f_scale != 1.0) {
    report.warnings.push_back("debug.f_scale = " + format_number(spec.debug_f_scale) +
                              ": analytic F deliberately corrupted");
  }

  result.table.header = {spec.sweep.variable, "analytic_ps", "mc_ps", "mc_std_error",
                         "ci_low", "ci_high", "trials", "pass"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const PointSetup p = point_setup(spec, xs[i]);
    double analytic = ps_unconditional(p.cfg, p.mix, p.si);
    if (spec.debug_f_scale != 1.0 && p.mix.p2() > 0.0) {
      const double F = pair_F(p.cfg.normalized_threshold(), p.cfg.alpha(), p.cfg.link_distance());
      analytic *= std::exp(-p.cfg.lambda() * p.mix.p2() * (spec.debug_f_scale - 1.0) * F);
    }
    const EstimateWithCI mc = point_estimate(p, sim, i);
    const bool pass = analytic >= mc.ci_low && analytic <= mc.ci_high;
    report.points.push_back({xs[i], analytic, mc, pass});
    if (!pass) ++report.failures;

    std::vector<std::string> row = {format_number(xs[i]), format_number(analytic)};
    const auto cells = mc_cells(mc);
    row.insert(row.end(), cells.begin(), cells.end());
    row.push_back(pass ? "1" : "0");
    result.table.rows.push_back(std::move(row));
  }
  report.allowed_failures = allowed_ci_misses(xs.size(), sim.confidence_level);
  return result;
}

FigureId parse_figure_id(const std::string& id) {
  if (id == "fig1") return FigureId::Fig1;
  if (id == "fig2") return FigureId::Fig2;
  if (id == "fig3") return FigureId::Fig3;
  if (id == "fig4") return FigureId::Fig4;
  if (id == "fig5") return FigureId::Fig5;
  throw ConfigError("figure", "unknown figure id '" + id + "' (expected fig1..fig5)");
}

namespace {

std::vector<double> db_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw ConfigError("step_db", "must be positive");
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  return out;
}

// Figure 1-3 operating point: lambda = 0.1, R = 1, alpha = 4.
NetworkConfig figure_network(double theta_db) {
  return NetworkConfig(0.1, db_to_linear(theta_db), 1.0, 4.0);
}

void append_mc(std::vector<std::string>& row, const EstimateWithCI& e) {
  row.push_back(format_number(e.estimate));
  row.push_back(format_number(e.ci_low));
  row.push_back(format_number(e.ci_high));
}

template <class RowFn>
Table theta_table(std::vector<std::string> header, const std::vector<double>& grid, RowFn&& row_fn) {
  Table t;
  t.header = std::move(header);
  t.rows.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows[i] = row_fn(i, grid[i]);
  return t;
}

SimConfig figure_sim(const FigureOptions& opts) {
  SimConfig sim;
  sim.trials = opts.mc_trials;
  sim.seed = opts.seed;
  return sim;
}

}  // namespace

std::vector<FigureOutput> build_figure(FigureId id, const FigureOptions& opts) {
  const bool mc = opts.mc_trials > 0;
  const SimConfig sim = figure_sim(opts);
  const double K = db_to_linear(kFigureKdb);

  switch (id) {
    case FigureId::Fig1: {
      const DuplexMix mix(0.0, 0.5, 0.5);
      const auto si = SelfInterferenceModel::perfect();
      std::vector<std::string> header = {"theta_db", "ps_exact", "ps_lower", "ps_upper"};
      if (mc) header.insert(header.end(), {"mc_ps", "ci_low", "ci_high"});
      const auto grid = db_grid(-10.0, 20.0, opts.step_db);
      return {{"fig1", theta_table(header, grid, [&](std::size_t i, double db) {
                 const auto cfg = figure_network(db);
                 const auto b = ps_bounds(cfg, mix, si, LinkMode::Unconditional, true);
                 std::vector<std::string> row = {format_number(db), format_number(*b.exact),
                                                 format_number(b.lower), format_number(b.upper)};
                 if (mc) {
                   append_mc(row, estimate_ps(cfg, mix, si, LinkMode::Unconditional, sim,
                                              kSweepStreamBase + i));
                 }
                 return row;
               })}};
    }
    case FigureId::Fig2: {
      const auto si = SelfInterferenceModel::perfect();
      std::vector<std::string> header = {"theta_db", "ps_fd_only", "ps_fd_lower", "ps_fd_upper",
                                         "ps_hd_only"};
      if (mc) header.insert(header.end(), {"mc_fd_only", "ci_low", "ci_high"});
      const auto grid = db_grid(-10.0, 20.0, opts.step_db);
      return {{"fig2", theta_table(header, grid, [&](std::size_t i, double db) {
                 const auto cfg = figure_network(db);
                 const auto b = ps_bounds(cfg, DuplexMix::fd_only(), si, LinkMode::FD, true);
                 std::vector<std::string> row = {format_number(db), format_number(*b.exact),
                                                 format_number(b.lower), format_number(b.upper),
                                                 format_number(ps_hd(cfg, DuplexMix::hd_only()))};
                 if (mc) {
                   append_mc(row, estimate_ps(cfg, DuplexMix::fd_only(), si, LinkMode::FD, sim,
                                              kSweepStreamBase + i));
                 }
                 return row;
               })}};
    }
    case FigureId::Fig3: {
      const SelfInterferenceModel perfect(0.0, K);
      const SelfInterferenceModel residual(1e-4, K);
      std::vector<std::string> header = {"theta_db", "ps_hd_only", "ps_fd_only_beta0",
                                         "ps_fd_only_beta1e-4"};
      if (mc) header.insert(header.end(), {"mc_fd_only_beta1e-4", "ci_low", "ci_high"});
      const auto grid = db_grid(-10.0, 20.0, opts.step_db);
      return {{"fig3", theta_table(header, grid, [&](std::size_t i, double db) {
                 const auto cfg = figure_network(db);
                 const auto fd = DuplexMix::fd_only();
                 std::vector<std::string> row = {format_number(db),
                                                 format_number(ps_hd(cfg, DuplexMix::hd_only())),
                                                 format_number(ps_fd(cfg, fd, perfect)),
                                                 format_number(ps_fd(cfg, fd, residual))};
                 if (mc) {
                   append_mc(row, estimate_ps(cfg, fd, residual, LinkMode::FD, sim,
                                              kSweepStreamBase + i));
                 }
                 return row;
               })}};
    }
    case FigureId::Fig4: {
      std::vector<FigureOutput> out;
      SweepGrid r_grid{"R", 1.0, 1000.0, 61, true};
      const auto radii = r_grid.values();
      for (double alpha : {3.0, 4.0}) {
        for (double theta_db : {0.0, 10.0}) {
          Table t;
          t.header = {"beta_c_db", "R"};
          for (double R : radii) {
            const NetworkConfig cfg(0.1, db_to_linear(theta_db), R, alpha);
            const double beta_c = critical_beta(cfg, K);
            t.rows.push_back({format_number(-linear_to_db(beta_c)), format_number(R)});
          }
          out.push_back({"fig4_alpha" + format_number(alpha) + "_theta" +
                             format_number(theta_db) + "db",
                         std::move(t)});
        }
      }
      return out;
    }
    case FigureId::Fig5: {
      std::vector<FigureOutput> out;
      const auto grid = db_grid(-10.0, 40.0, opts.step_db);
      const std::pair<const char*, double> betas[] = {
          {"fig5_beta1e-5", 1e-5}, {"fig5_beta1e-7", 1e-7}, {"fig5_beta0", 0.0}};
      for (const auto& [name, beta] : betas) {
        const SelfInterferenceModel si(beta, K);
        out.push_back({name, theta_table({"theta_db", "tg", "tg_lower", "tg_upper"}, grid,
                                         [&](std::size_t, double db) {
                                           const auto g = throughput_gain(figure_network(db), si);
                                           return std::vector<std::string>{
                                               format_number(db), format_number(g.tg),
                                               format_number(g.lower), format_number(g.upper)};
                                         })});
      }
      return out;
    }
  }
  throw ConfigError("figure", "unknown figure");
}

std::vector<std::filesystem::path> run_figure(FigureId id, const std::filesystem::path& out_dir,
                                              const FigureOptions& opts) {
  std::vector<std::filesystem::path> paths;
  for (const auto& fig : build_figure(id, opts)) {
    const auto path = out_dir / (fig.name + ".csv");
    write_csv(fig.table, path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace fdnet::cli
