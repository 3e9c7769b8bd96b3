#include "zsl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <deque>
#include <fstream>
#include <limits>
#include <numbers>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "zsl/checkpoint.hpp"
#include "zsl/errors.hpp"
#include "zsl/evolve.hpp"
#include "zsl/hyperbolic.hpp"
#include "zsl/log.hpp"
#include "zsl/plot.hpp"
#include "zsl/spectral.hpp"

namespace zsl {

using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Config reading

struct Bounds {
  double lo;
  double hi;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double v) const {
    if (lo_open ? !(v > lo) : !(v >= lo)) return false;
    return hi_open ? v < hi : v <= hi;
  }
  std::string text() const {
    std::ostringstream os;
    os << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']');
    return os.str();
  }
};

const Bounds kPositive{0.0, kInf, true, true};
const Bounds kNonNegative{0.0, kInf, false, true};
const Bounds kFinite{-kInf, kInf, true, true};

std::string join(const std::vector<std::string>& keys) {
  std::string out;
  for (const auto& k : keys) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// View of one JSON object that rejects keys outside `valid`.
class Section {
 public:
  Section(const json& j, std::string path, std::vector<std::string> valid)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw UsageError(where() + " must be a JSON object");
    for (const auto& [key, value] : j_.items()) {
      if (std::find(valid.begin(), valid.end(), key) == valid.end()) {
        throw UsageError(child(path_, key) + ": unknown key (valid keys: " + join(valid) + ")");
      }
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& at(const std::string& key) const { return j_.at(key); }
  std::string path(const std::string& key) const { return child(path_, key); }

  void number(const std::string& key, double& out, const Bounds& b) const {
    if (!has(key)) return;
    out = checked_number(at(key), path(key), b);
  }

  template <class Int>
  void integer(const std::string& key, Int& out, double lo, double hi) const {
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_number_integer()) throw UsageError(path(key) + " must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
      throw UsageError(path(key) + " = " + std::to_string(x) + " is out of range " +
                       Bounds{lo, hi}.text());
    }
    out = static_cast<Int>(x);
  }

  void boolean(const std::string& key, bool& out) const {
    if (!has(key)) return;
    if (!at(key).is_boolean()) throw UsageError(path(key) + " must be true or false");
    out = at(key).get<bool>();
  }

  void string(const std::string& key, std::string& out) const {
    if (!has(key)) return;
    if (!at(key).is_string()) throw UsageError(path(key) + " must be a string");
    out = at(key).get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, const Bounds& b) const {
    const json& v = at(key);
    if (!v.is_array()) throw UsageError(path(key) + " must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(checked_number(v[i], path(key) + "[" + std::to_string(i) + "]", b));
    }
    return out;
  }

  static double checked_number(const json& v, const std::string& where, const Bounds& b) {
    if (!v.is_number()) throw UsageError(where + " must be a number");
    const double x = v.get<double>();
    if (!b.contains(x)) {
      std::ostringstream os;
      os << where << " = " << x << " is out of range " << b.text();
      throw UsageError(os.str());
    }
    return x;
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
};

std::string integrator_name(Integrator i) {
  return i == Integrator::strang ? "strang" : "split-duhamel";
}

Integrator integrator_from(const std::string& s) {
  if (s == "strang") return Integrator::strang;
  if (s == "split-duhamel") return Integrator::split_duhamel;
  throw UsageError("sim.integrator: unknown integrator '" + s + "' (valid: strang, split-duhamel)");
}

void read_grid(const Section& s, GridSpec& g) {
  s.integer("nx", g.nx, 8, 8192);
  s.integer("ny", g.ny, 8, 8192);
  s.number("lx", g.lx, kPositive);
  s.number("ly", g.ly, kPositive);
}

void read_sim(const Section& s, SimParams& p) {
  s.number("lambda", p.lambda, kPositive);
  s.number("dt", p.dt, kPositive);
  s.number("t_final", p.t_final, kNonNegative);
  if (s.has("integrator")) {
    std::string name;
    s.string("integrator", name);
    p.integrator = integrator_from(name);
  }
  s.boolean("dealias", p.dealias);
}

void read_pair(const Section& s, const std::string& key, double (&out)[2], const Bounds& b) {
  if (!s.has(key)) return;
  const auto v = s.numbers(key, b);
  if (v.size() != 2) throw UsageError(s.path(key) + " must have two entries");
  out[0] = v[0];
  out[1] = v[1];
}

void read_initial(const Section& s, InitialSpec& init) {
  if (s.has("profile")) {
    std::string name;
    s.string("profile", name);
    init.profile = profile_from_string(name);
  }
  s.number("amplitude", init.amplitude, kFinite);
  s.number("width", init.width, kPositive);
  read_pair(s, "center", init.center, kFinite);
  if (s.has("k")) {
    const json& v = s.at("k");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer()) {
      throw UsageError(s.path("k") + " must be two integers");
    }
    init.k[0] = v[0].get<int>();
    init.k[1] = v[1].get<int>();
  }
}

void read_output(const Section& s, OutputSpec& o) {
  s.string("dir", o.dir);
  s.integer("record_stride", o.record_stride, 1, 1e12);
  s.integer("checkpoint_stride", o.checkpoint_stride, 0, 1e12);
  s.boolean("plots", o.plots);
}

void read_diagnostics(const Section& s, DiagnosticsConfig& d) {
  if (s.has("u_orders")) d.u_orders = s.numbers("u_orders", Bounds{-8.0, 8.0});
  s.number("n_order", d.n_order, Bounds{-8.0, 8.0});
}

void read_sweep(const Section& s, SweepConfig& w) {
  if (s.has("lambdas")) w.lambdas = s.numbers("lambdas", kPositive);
  s.number("dt0", w.dt0, kPositive);
  s.boolean("control", w.control);
}

const char* kAxisNames[4] = {"xi1", "xi2", "xi1p", "tau"};

void read_scan(const Section& s, ScanConfig& c) {
  if (s.has("ranges")) {
    const Section r(s.at("ranges"), s.path("ranges"), {"xi1", "xi2", "xi1p", "tau"});
    for (int k = 0; k < 4; ++k) {
      double pair[2] = {c.ranges[k].lo, c.ranges[k].hi};
      read_pair(r, kAxisNames[k], pair, kFinite);
      c.ranges[k] = {pair[0], pair[1]};
    }
  }
  s.integer("points", c.points, 8, 4096);
  s.integer("refinements", c.refinements, 0, 8);
  s.integer("wave_sign", c.wave_sign, -1, 1);
  s.integer("schrodinger_sign", c.schrodinger_sign, -1, 1);
  s.integer("points_3d", c.points_3d, 8, 4096);
  s.integer("samples", c.samples, 1, 1e10);
  if (s.has("nus")) c.nus = s.numbers("nus", Bounds{1.0, kInf, true, true});
}

void read_hyperbolic(const Section& s, HyperbolicCheckConfig& h) {
  s.integer("nodes", h.nodes, 1, 1e8);
  if (s.has("probes")) h.probes = s.numbers("probes", kPositive);
}

json write_pair(double a, double b) { return json::array({a, b}); }

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checks

json check_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["value"] = std::isfinite(c.value) ? json(c.value) : json(nullptr);
  j["relation"] = c.relation;
  j["limit"] = c.limit;
  j["passed"] = c.passed;
  return j;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

GridPtr grid_of(const ExperimentConfig& cfg) {
  return make_grid(cfg.grid.nx, cfg.grid.ny, cfg.grid.lx, cfg.grid.ly);
}

double largest_norm(const DiagnosticsRecord& r) {
  double m = std::max({r.perturbation, r.n_norm, r.nt_norm, r.v_l2});
  for (double x : r.u_norms) m = std::max(m, x);
  return m;
}

// Sum of a few random low Fourier modes; smooth and periodic on the box.
RealField random_field(const GridPtr& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> mode(-3, 3);
  struct Term {
    double a, kx, ky, p;
  };
  std::vector<Term> terms;
  for (int i = 0; i < 4; ++i) {
    terms.push_back({amp(rng), 2.0 * std::numbers::pi * mode(rng) / grid->lx(),
                     2.0 * std::numbers::pi * mode(rng) / grid->ly(), phase(rng)});
  }
  return RealField::sample(grid, [&](double x, double y) {
    double v = 0.0;
    for (const auto& t : terms) v += t.a * std::cos(t.kx * x + t.ky * y + t.p);
    return v;
  });
}

struct Trajectory {
  std::vector<double> residuals;
  double max_w = 0.0;
};

// Steps cfg.sim with step size dt and evaluates the central-difference
// residual at each probe time (rounded to the nearest step).
Trajectory trajectory_residuals(const ExperimentConfig& cfg,
                                const std::shared_ptr<const Background>& bg, double dt) {
  SimParams p = cfg.sim;
  p.dt = dt;
  const double lambda = p.lambda;
  std::vector<long> probe_steps;
  for (double t : cfg.hyperbolic.probes) probe_steps.push_back(std::lround(t / dt));
  const long last = *std::max_element(probe_steps.begin(), probe_steps.end()) + 1;

  ZakharovState s = make_initial(cfg.initial, *bg);
  const double t0 = s.t;
  std::unique_ptr<StrangIntegrator> strang;
  std::unique_ptr<SplitDuhamelIntegrator> split;
  SplitState ss;
  if (p.integrator == Integrator::strang) {
    strang = std::make_unique<StrangIntegrator>(bg, p);
  } else {
    split = std::make_unique<SplitDuhamelIntegrator>(bg, p);
    ss = to_split(s, lambda);
  }

  Trajectory out;
  out.residuals.assign(probe_steps.size(), 0.0);
  std::deque<HyperbolicState> window;
  for (long i = 0; i <= last; ++i) {
    if (i > 0) {
      if (strang) {
        s = strang->step(s);
      } else {
        ss = split->step(ss);
        s = from_split(ss, lambda);
      }
      if (!s.all_finite()) throw NumericError("non-finite state in trajectory", s.t);
    }
    s.t = t0 + static_cast<double>(i) * dt;
    window.push_back(build_u(s, *bg, lambda));
    out.max_w = std::max(out.max_w, w_constraint_norm(window.back()));
    if (window.size() > 3) window.pop_front();
    for (std::size_t k = 0; k < probe_steps.size(); ++k) {
      if (window.size() == 3 && probe_steps[k] == i - 1) {
        out.residuals[k] = system_residual(window[0], window[1], window[2], dt, *bg, lambda);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output

std::string timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << text;
  os.flush();
  if (!os) throw IoError("failed writing " + path.string());
}

std::string series_csv(const std::vector<DiagnosticsRecord>& series, const DiagnosticsConfig& d) {
  std::ostringstream os;
  write_csv(os, series, d);
  return os.str();
}

Series energy_series(const std::string& label, const std::vector<DiagnosticsRecord>& series) {
  Series s{label, {}, {}};
  const double e0 = series.empty() ? 0.0 : series.front().energy;
  for (const auto& r : series) {
    s.x.push_back(r.t);
    s.y.push_back(std::abs(r.energy - e0) / std::max(1.0, std::abs(e0)));
  }
  return s;
}

class Writer {
 public:
  explicit Writer(const ExperimentConfig& cfg) : cfg_(cfg), dir_(cfg.output.dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  std::filesystem::path path(const std::string& name) const { return dir_ / name; }
  void text(const std::string& name, const std::string& content) const {
    write_text(path(name), content);
  }
  void svg(const std::string& name, const std::vector<Series>& s, const ChartOptions& o) const {
    if (cfg_.output.plots) text(name, render_svg(s, o));
  }

 private:
  const ExperimentConfig& cfg_;
  std::filesystem::path dir_;
};

json summary_base(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["config_hash"] = config_hash(cfg);
  return j;
}

void finish_summary(json& j, const std::vector<Check>& checks) {
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(check_json(c));
  j["passed"] = all_passed(checks);
}

std::string checkpoint_name(long step) {
  std::string digits = std::to_string(step);
  if (digits.size() < 8) digits.insert(0, 8 - digits.size(), '0');
  return "checkpoint_" + digits + ".bin";
}

std::vector<Check> run_evolve(const ExperimentConfig& cfg, const Writer& out, json& summary) {
  auto bg = std::make_shared<const Background>(grid_of(cfg));
  const ZakharovState init = make_initial(cfg.initial, *bg);
  EvolveOptions opts;
  opts.record_stride = cfg.output.record_stride;
  opts.diagnostics = cfg.diagnostics;
  const long stride = cfg.output.checkpoint_stride;
  if (stride > 0) {
    opts.observer = [&](const ZakharovState& s, const DiagnosticsRecord&) {
      const long step = std::lround((s.t - init.t) / cfg.sim.dt);
      if (step % stride == 0) write_checkpoint(out.path(checkpoint_name(step)), s, cfg.sim.lambda);
    };
  }
  const EvolveResult r = evolve(init, bg, cfg.sim, opts);
  write_checkpoint(out.path("checkpoint_final.bin"), r.state, cfg.sim.lambda);
  out.text("diagnostics.csv", series_csv(r.series, cfg.diagnostics));
  out.svg("energy.svg", {energy_series("relative energy change", r.series)},
          {.title = "Energy", .x_label = "t", .y_label = "|E(t) - E(0)| / max(1, |E(0)|)"});

  double largest = 0.0;
  for (const auto& rec : r.series) largest = std::max(largest, largest_norm(rec));
  summary["steps"] = r.steps;
  summary["energy_drift"] = max_relative_drift(r.series);
  summary["max_norm"] = largest;
  summary["final_energy"] = r.series.back().energy;

  std::vector<Check> checks;
  checks.push_back(make_check("finite", r.state.all_finite() ? 1.0 : 0.0, "==", 1.0));
  if (cfg.initial.profile == Profile::zero) {
    checks.push_back(make_check("max_norm", largest, "<", 1e-10));
  }
  return checks;
}

std::vector<Check> run_soliton(const ExperimentConfig& cfg, const Writer& out, json& summary) {
  const SolitonCheck r = soliton_check(cfg);
  out.text("diagnostics.csv", series_csv(r.series, cfg.diagnostics));
  summary["ode_residual"] = r.ode.residual;
  summary["boundary_value"] = r.ode.boundary_value;
  summary["max_norm"] = r.max_perturbation;
  return r.checks;
}

std::vector<Check> run_drift(const ExperimentConfig& cfg, const Writer& out, json& summary) {
  const DriftCheck r = energy_drift_check(cfg);
  out.text("diagnostics_dt.csv", series_csv(r.series, cfg.diagnostics));
  out.text("diagnostics_dt_half.csv", series_csv(r.series_half, cfg.diagnostics));
  out.svg("energy_drift.svg",
          {energy_series("dt", r.series), energy_series("dt/2", r.series_half)},
          {.title = "Energy drift",
           .x_label = "t",
           .y_label = "|E(t) - E(0)| / max(1, |E(0)|)",
           .log_y = true});
  summary["dt"] = cfg.sim.dt;
  summary["drift"] = r.drift;
  summary["drift_half"] = r.drift_half;
  summary["ratio"] = r.ratio;
  return r.checks;
}

std::vector<Check> run_sweep_experiment(const ExperimentConfig& cfg, const Writer& out,
                                        json& summary) {
  SweepConfig sc = cfg.sweep;
  sc.initial = cfg.initial;
  sc.t_final = cfg.sim.t_final;
  sc.integrator = cfg.sim.integrator;
  sc.dealias = cfg.sim.dealias;
  sc.threads = cfg.threads;
  const SweepReport r = run_sweep(grid_of(cfg), sc);

  std::ostringstream csv;
  write_sweep_csv(csv, r);
  out.text("sweep.csv", csv.str());
  out.text("sweep.json", to_json(r) + "\n");
  Series ec{"e_constraint", {}, {}}, eu{"e_u", {}, {}};
  for (const auto& m : r.members) {
    ec.x.push_back(m.lambda);
    ec.y.push_back(m.e_constraint);
    eu.x.push_back(m.lambda);
    eu.y.push_back(m.e_u);
  }
  out.svg("sweep.svg", {ec, eu},
          {.title = "Subsonic limit",
           .x_label = "lambda",
           .y_label = "error at t_final",
           .log_x = true,
           .log_y = true});

  summary["sweep"] = json::parse(to_json(r));
  const auto ratios = r.constraint_ratios();
  const double min_ratio =
      ratios.empty() ? kInf : *std::min_element(ratios.begin(), ratios.end());
  std::vector<Check> checks;
  checks.push_back(make_check("members_ok", r.all_ok() ? 1.0 : 0.0, "==", 1.0));
  checks.push_back(
      make_check("constraint_decreasing", r.constraint_decreasing() ? 1.0 : 0.0, "==", 1.0));
  checks.push_back(make_check("min_constraint_ratio", min_ratio, ">=", 1.3));
  checks.push_back(make_check("e_u_decreasing", r.e_u_decreasing() ? 1.0 : 0.0, "==", 1.0));
  if (r.control) {
    checks.push_back(make_check("scheme_fraction", r.control->scheme_fraction, "<", 0.1));
  }
  return checks;
}

std::vector<Check> run_scans(const ExperimentConfig& cfg, const Writer& out, json& summary) {
  const auto reports = symbol_scans(cfg);
  std::vector<Check> checks;
  summary["scans"] = json::array();
  for (const auto& r : reports) {
    out.text("scan_" + r.id + ".json", to_json(r) + "\n");
    summary["scans"].push_back(json::parse(to_json(r)));
    checks.push_back(make_check(r.id + "_passed", r.passed ? 1.0 : 0.0, "==", 1.0));
    if (r.id == "symbol1") checks.push_back(make_check("symbol1_C", r.constant, "<=", 50.0));
  }
  return checks;
}

std::vector<Check> run_hyperbolic(const ExperimentConfig& cfg, const Writer& out,
                                  json& summary) {
  const HyperbolicCheck r = hyperbolic_check(cfg);
  std::ostringstream csv;
  csv << "t,residual_dt,residual_dt_half,ratio\n";
  for (const auto& p : r.probes) {
    csv << format_double(p.t) << ',' << format_double(p.residual) << ','
        << format_double(p.residual_half) << ',' << format_double(p.ratio) << '\n';
  }
  out.text("hyperbolic.csv", csv.str());
  summary["symmetry_defect"] = r.symmetry_defect;
  summary["form_mismatch"] = r.form_mismatch;
  summary["max_w"] = r.max_w;
  summary["min_ratio"] = r.min_ratio;
  return r.checks;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::soliton_check:
      return "soliton-check";
    case ExperimentId::evolve:
      return "evolve";
    case ExperimentId::energy_drift:
      return "energy-drift";
    case ExperimentId::lambda_sweep:
      return "lambda-sweep";
    case ExperimentId::symbol_scan:
      return "symbol-scan";
    case ExperimentId::hyperbolic_check:
      return "hyperbolic-check";
  }
  return "soliton-check";
}

ExperimentId experiment_from_string(const std::string& name) {
  for (auto id : {ExperimentId::soliton_check, ExperimentId::evolve, ExperimentId::energy_drift,
                  ExperimentId::lambda_sweep, ExperimentId::symbol_scan,
                  ExperimentId::hyperbolic_check}) {
    if (to_string(id) == name) return id;
  }
  throw UsageError("experiment: unknown id '" + name +
                   "' (valid: soliton-check, evolve, energy-drift, lambda-sweep, symbol-scan, "
                   "hyperbolic-check)");
}

ExperimentConfig default_config(ExperimentId id) {
  ExperimentConfig c;
  c.experiment = id;
  switch (id) {
    case ExperimentId::soliton_check:
      // Q(L/2) must be negligible for the periodized profile to solve the ODE.
      c.grid.nx = c.grid.ny = 384;
      c.grid.lx = c.grid.ly = 60.0;
      break;
    case ExperimentId::evolve:
      c.initial.profile = Profile::gaussian;
      break;
    case ExperimentId::energy_drift:
      c.sim.dt = 5e-4;
      c.initial.profile = Profile::gaussian;
      break;
    case ExperimentId::lambda_sweep:
      c.grid.nx = c.grid.ny = 128;
      c.sim.t_final = 0.5;
      c.initial.profile = Profile::prepared_gaussian;
      break;
    case ExperimentId::symbol_scan:
      break;
    case ExperimentId::hyperbolic_check:
      c.sim.dt = 2e-3;
      c.sim.dealias = false;
      c.initial.profile = Profile::gaussian;
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  const GridPtr g = make_grid(grid.nx, grid.ny, grid.lx, grid.ly);
  if (experiment != ExperimentId::lambda_sweep && experiment != ExperimentId::symbol_scan) {
    sim.validate(*g);
  }
  initial.validate();
  if (output.checkpoint_stride % output.record_stride != 0) {
    throw UsageError("output.checkpoint_stride must be a multiple of output.record_stride");
  }
  if (threads < 1 || threads > 1024) {
    throw UsageError("threads = " + std::to_string(threads) + " is out of range [1, 1024]");
  }
  if (experiment == ExperimentId::lambda_sweep) {
    SweepConfig s = sweep;
    s.t_final = sim.t_final;
    s.initial = initial;
    s.threads = threads;
    s.validate();
    for (double l : sweep.lambdas) {
      SimParams p = sim;
      p.lambda = l;
      p.dt = sweep.dt0 / l;
      p.validate(*g);
    }
  }
  if (experiment == ExperimentId::symbol_scan) {
    ScanConfig s = scan;
    s.threads = threads;
    s.validate();
  }
  if (experiment == ExperimentId::hyperbolic_check) {
    if (hyperbolic.probes.empty()) throw UsageError("hyperbolic.probes must not be empty");
    for (double t : hyperbolic.probes) {
      if (t > sim.t_final) throw UsageError("hyperbolic.probes entries must be <= sim.t_final");
      if (std::lround(0.5 * t / sim.dt) < 1) {
        throw UsageError("hyperbolic.probes entries must be at least 2 * sim.dt");
      }
    }
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  const Section top(j,
                    "", {"experiment", "grid", "sim", "initial", "output", "diagnostics", "sweep",
                         "scan", "hyperbolic", "seed", "threads"});
  if (!top.has("experiment")) throw UsageError("experiment: required key is missing");
  std::string id;
  top.string("experiment", id);
  ExperimentConfig c = default_config(experiment_from_string(id));

  if (top.has("grid")) read_grid(Section(top.at("grid"), "grid", {"nx", "ny", "lx", "ly"}), c.grid);
  if (top.has("sim")) {
    read_sim(Section(top.at("sim"), "sim", {"lambda", "dt", "t_final", "integrator", "dealias"}),
             c.sim);
  }
  if (top.has("initial")) {
    read_initial(Section(top.at("initial"), "initial",
                         {"profile", "amplitude", "width", "center", "k"}),
                 c.initial);
  }
  if (top.has("output")) {
    read_output(Section(top.at("output"), "output",
                        {"dir", "record_stride", "checkpoint_stride", "plots"}),
                c.output);
  }
  if (top.has("diagnostics")) {
    read_diagnostics(Section(top.at("diagnostics"), "diagnostics", {"u_orders", "n_order"}),
                     c.diagnostics);
  }
  if (top.has("sweep")) {
    read_sweep(Section(top.at("sweep"), "sweep", {"lambdas", "dt0", "control"}), c.sweep);
  }
  if (top.has("scan")) {
    read_scan(Section(top.at("scan"), "scan",
                      {"ranges", "points", "refinements", "wave_sign", "schrodinger_sign",
                       "points_3d", "samples", "nus"}),
              c.scan);
  }
  if (top.has("hyperbolic")) {
    read_hyperbolic(Section(top.at("hyperbolic"), "hyperbolic", {"nodes", "probes"}),
                    c.hyperbolic);
  }
  if (top.has("seed")) {
    if (!top.at("seed").is_number_unsigned()) {
      throw UsageError("seed must be a non-negative integer");
    }
    c.seed = top.at("seed").get<std::uint64_t>();
  }
  top.integer("threads", c.threads, 1, 1024);
  c.validate();
  return c;
}

std::string serialize(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["grid"] = {{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"lx", c.grid.lx}, {"ly", c.grid.ly}};
  j["sim"] = {{"lambda", c.sim.lambda},
              {"dt", c.sim.dt},
              {"t_final", c.sim.t_final},
              {"integrator", integrator_name(c.sim.integrator)},
              {"dealias", c.sim.dealias}};
  j["initial"] = {{"profile", to_string(c.initial.profile)},
                  {"amplitude", c.initial.amplitude},
                  {"width", c.initial.width},
                  {"center", write_pair(c.initial.center[0], c.initial.center[1])},
                  {"k", json::array({c.initial.k[0], c.initial.k[1]})}};
  j["output"] = {{"dir", c.output.dir},
                 {"record_stride", c.output.record_stride},
                 {"checkpoint_stride", c.output.checkpoint_stride},
                 {"plots", c.output.plots}};
  j["diagnostics"] = {{"u_orders", c.diagnostics.u_orders}, {"n_order", c.diagnostics.n_order}};
  j["sweep"] = {{"lambdas", c.sweep.lambdas}, {"dt0", c.sweep.dt0}, {"control", c.sweep.control}};
  json ranges;
  for (int k = 0; k < 4; ++k) ranges[kAxisNames[k]] = write_pair(c.scan.ranges[k].lo, c.scan.ranges[k].hi);
  j["scan"] = {{"ranges", ranges},
               {"points", c.scan.points},
               {"refinements", c.scan.refinements},
               {"wave_sign", c.scan.wave_sign},
               {"schrodinger_sign", c.scan.schrodinger_sign},
               {"points_3d", c.scan.points_3d},
               {"samples", c.scan.samples},
               {"nus", c.scan.nus}};
  j["hyperbolic"] = {{"nodes", c.hyperbolic.nodes}, {"probes", c.hyperbolic.probes}};
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j.dump(2) + "\n";
}

std::string config_hash(const ExperimentConfig& c) {
  ExperimentConfig copy = c;
  copy.output.dir.clear();
  // Thread count does not change any result.
  copy.threads = 1;
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : serialize(copy)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return hex64(h);
}

Check make_check(std::string name, double value, std::string relation, double limit) {
  bool ok = false;
  if (relation == "<") {
    ok = value < limit;
  } else if (relation == "<=") {
    ok = value <= limit;
  } else if (relation == ">=") {
    ok = value >= limit;
  } else if (relation == "==") {
    ok = value == limit;
  } else {
    throw UsageError("unknown relation " + relation);
  }
  return {std::move(name), value, std::move(relation), limit, ok};
}

SolitonCheck soliton_check(const ExperimentConfig& cfg) {
  const GridPtr grid = grid_of(cfg);
  SolitonCheck out;
  out.ode = ode_residual(grid);
  auto bg = std::make_shared<const Background>(grid);
  EvolveOptions opts;
  opts.record_stride = cfg.output.record_stride;
  opts.diagnostics = cfg.diagnostics;
  const EvolveResult r = evolve(make_initial(cfg.initial, *bg), bg, cfg.sim, opts);
  out.series = r.series;
  for (const auto& rec : r.series) {
    out.max_perturbation = std::max(out.max_perturbation, largest_norm(rec));
  }
  out.checks.push_back(make_check("ode_residual", out.ode.residual, "<", 1e-8));
  out.checks.push_back(make_check("max_norm", out.max_perturbation, "<", 1e-10));
  return out;
}

DriftCheck energy_drift_check(const ExperimentConfig& cfg) {
  auto bg = std::make_shared<const Background>(grid_of(cfg));
  const ZakharovState init = make_initial(cfg.initial, *bg);
  EvolveOptions opts;
  opts.record_stride = cfg.output.record_stride;
  opts.diagnostics = cfg.diagnostics;
  DriftCheck out;
  out.series = evolve(init, bg, cfg.sim, opts).series;
  SimParams half = cfg.sim;
  half.dt *= 0.5;
  opts.record_stride *= 2;
  out.series_half = evolve(init, bg, half, opts).series;
  out.drift = max_relative_drift(out.series);
  out.drift_half = max_relative_drift(out.series_half);
  out.ratio = out.drift / out.drift_half;
  out.checks.push_back(make_check("drift", out.drift, "<", 1e-6));
  out.checks.push_back(make_check("ratio_min", out.ratio, ">=", 3.0));
  out.checks.push_back(make_check("ratio_max", out.ratio, "<=", 5.0));
  return out;
}

HyperbolicCheck hyperbolic_check(const ExperimentConfig& cfg) {
  HyperbolicCheck out;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);

  const Mat9 k = k_matrix();
  out.symmetry_defect = (k + k.transpose()).cwiseAbs().maxCoeff();
  for (int i = 0; i < cfg.hyperbolic.nodes; ++i) {
    Vec9 u;
    for (int c = 0; c < kHyperbolicComponents; ++c) u[c] = uni(rng);
    NodeBackground b;
    b.f_r = uni(rng);
    b.g_r = uni(rng);
    b.p_r = uni(rng);
    for (int j = 0; j < 2; ++j) {
      b.h_r[j] = uni(rng);
      b.l_r[j] = uni(rng);
    }
    b.div_h_r = uni(rng);
    b.div_l_r = uni(rng);
    const CoeffMatrices m = matrices(u, b);
    for (const Mat9* s : {&m.a1, &m.a2, &m.b1, &m.b2, &m.c1, &m.c2}) {
      out.symmetry_defect = std::max(out.symmetry_defect, (*s - s->transpose()).cwiseAbs().maxCoeff());
    }
  }

  const GridPtr grid = grid_of(cfg);
  auto bg = std::make_shared<const Background>(grid);
  {
    HyperbolicState u = HyperbolicState::zero(grid, 0.3);
    HyperbolicState u_t = HyperbolicState::zero(grid, 0.3);
    for (int c = 0; c < kHyperbolicComponents; ++c) {
      u[c] = random_field(grid, rng);
      u_t[c] = random_field(grid, rng);
    }
    const HyperbolicState a = matrix_residual(u_t, u, *bg, cfg.sim.lambda);
    const HyperbolicState d = direct_residual(u_t, u, *bg, cfg.sim.lambda);
    double diff = 0.0, scale = 1.0;
    for (int c = 0; c < kHyperbolicComponents; ++c) {
      diff = std::max(diff, max_abs(a[c] - d[c]));
      scale = std::max(scale, max_abs(a[c]));
    }
    out.form_mismatch = diff / scale;
  }

  const Trajectory full = trajectory_residuals(cfg, bg, cfg.sim.dt);
  const Trajectory half = trajectory_residuals(cfg, bg, 0.5 * cfg.sim.dt);
  out.max_w = std::max(full.max_w, half.max_w);
  out.min_ratio = kInf;
  for (std::size_t i = 0; i < cfg.hyperbolic.probes.size(); ++i) {
    HyperbolicProbe p{cfg.hyperbolic.probes[i], full.residuals[i], half.residuals[i], 0.0};
    p.ratio = p.residual / p.residual_half;
    out.min_ratio = std::min(out.min_ratio, p.ratio);
    out.probes.push_back(p);
  }

  out.checks.push_back(make_check("symmetry_defect", out.symmetry_defect, "==", 0.0));
  out.checks.push_back(make_check("form_mismatch", out.form_mismatch, "<", 1e-10));
  out.checks.push_back(make_check("max_w", out.max_w, "<", 1e-7));
  out.checks.push_back(make_check("min_residual_ratio", out.min_ratio, ">=", 3.5));
  return out;
}

std::vector<ScanReport> symbol_scans(const ExperimentConfig& cfg) {
  ScanConfig s = cfg.scan;
  s.seed = cfg.seed;
  s.threads = cfg.threads;
  return {scan_symbol1(s), scan_symbol2(s), check_symbol3(s), check_z_inequality(s),
          check_b_region(s)};
}

int run(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::system_clock::now();
  const auto clock0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    const Writer out(cfg);
    out.text("config.json", serialize(cfg));
    json summary = summary_base(cfg);
    std::vector<Check> checks;
    try {
      switch (cfg.experiment) {
        case ExperimentId::soliton_check:
          checks = run_soliton(cfg, out, summary);
          break;
        case ExperimentId::evolve:
          checks = run_evolve(cfg, out, summary);
          break;
        case ExperimentId::energy_drift:
          checks = run_drift(cfg, out, summary);
          break;
        case ExperimentId::lambda_sweep:
          checks = run_sweep_experiment(cfg, out, summary);
          break;
        case ExperimentId::symbol_scan:
          checks = run_scans(cfg, out, summary);
          break;
        case ExperimentId::hyperbolic_check:
          checks = run_hyperbolic(cfg, out, summary);
          break;
      }
      finish_summary(summary, checks);
      code = summary["passed"].get<bool>() ? kOk : kGatingFailed;
    } catch (const NumericError& e) {
      summary["error"] = e.what();
      summary["error_time"] = e.time();
      summary["passed"] = false;
      code = kNumericAbort;
    }
    out.text("summary.json", summary.dump(2) + "\n");

    const auto elapsed = std::chrono::steady_clock::now() - clock0;
    json info;
    info["started"] = timestamp(started);
    info["finished"] = timestamp(std::chrono::system_clock::now());
    info["elapsed_seconds"] = std::chrono::duration<double>(elapsed).count();
    info["threads"] = cfg.threads;
    out.text("run_info.json", info.dump(2) + "\n");
  } catch (const IoError& e) {
    warn(e.what());
    return kIoFailure;
  }
  return code;
}

}  // namespace zsl
