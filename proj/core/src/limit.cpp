#include "zsl/limit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <thread>

#include "zsl/diagnostics.hpp"
#include "zsl/errors.hpp"
#include "zsl/evolve.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

struct Run {
  bool ok = false;
  std::string error;
  ZakharovState state;
};

Run run_member(const ZakharovState& init, const std::shared_ptr<const Background>& bg,
               const SweepConfig& cfg, double lambda, double dt) {
  SimParams p;
  p.lambda = lambda;
  p.dt = dt;
  p.t_final = cfg.t_final;
  p.integrator = cfg.integrator;
  p.dealias = cfg.dealias;
  Run r;
  try {
    EvolveOptions opts;
    opts.record_stride = std::numeric_limits<long>::max();
    r.state = evolve(init, bg, p, opts).state;
    r.ok = true;
  } catch (const NumericError& e) {
    r.error = e.what();
  }
  return r;
}

struct Reference {
  bool ok = false;
  std::string error;
  ComplexField u;
};

Reference run_reference(const ComplexField& u0, const std::shared_ptr<const Background>& bg,
                        const SweepConfig& cfg, double dt) {
  SimParams p;
  p.dt = dt;
  p.t_final = cfg.t_final;
  p.dealias = cfg.dealias;
  Reference r;
  try {
    r.u = evolve_pnls(u0, bg, p);
    r.ok = true;
  } catch (const NumericError& e) {
    r.error = e.what();
  }
  return r;
}

double h1_distance(const ComplexField& a, const ComplexField& b) {
  return sobolev_norm(a - b, SobolevIndex(1.0));
}

// Runs jobs[0..n) on at most `threads` workers. Each job writes only its own
// slot, so the outcome does not depend on scheduling.
template <class Job>
void run_parallel(std::size_t n, int threads, Job&& job) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  }
}

}  // namespace

void SweepConfig::validate() const {
  if (lambdas.empty()) throw UsageError("sweep.lambdas must not be empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i])) {
      throw UsageError("sweep.lambdas entries must be > 0");
    }
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw UsageError("sweep.lambdas must be strictly increasing");
    }
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw UsageError("sweep.t_final must be > 0");
  if (!(dt0 > 0.0) || !std::isfinite(dt0)) throw UsageError("sweep.dt0 must be > 0");
  if (threads < 1) throw UsageError("threads must be >= 1");
  initial.validate();
}

std::vector<double> SweepReport::constraint_ratios() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < members.size(); ++i) {
    out.push_back(members[i - 1].e_constraint / members[i].e_constraint);
  }
  return out;
}

bool SweepReport::constraint_decreasing() const {
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (!(members[i].e_constraint < members[i - 1].e_constraint)) return false;
  }
  return true;
}

bool SweepReport::e_u_decreasing() const {
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (!(members[i].e_u < members[i - 1].e_u)) return false;
  }
  return true;
}

bool SweepReport::all_ok() const {
  if (!reference_ok) return false;
  for (const auto& m : members) {
    if (!m.ok) return false;
  }
  return !control || control->ok;
}

SweepReport run_sweep(const GridPtr& grid, const SweepConfig& cfg) {
  cfg.validate();
  auto bg = std::make_shared<const Background>(grid);
  const ZakharovState init = make_initial(cfg.initial, *bg);
  const std::size_t m = cfg.lambdas.size();
  const double dt_ref = cfg.dt0 / cfg.lambdas.back();

  // Slots 0..m-1 are members, m is the reference; with a control run, m+1
  // and m+2 repeat the last member and the reference at dt/2.
  const std::size_t jobs = m + 1 + (cfg.control ? 2 : 0);
  std::vector<Run> runs(m + (cfg.control ? 1 : 0));
  std::vector<Reference> refs(cfg.control ? 2 : 1);
  run_parallel(jobs, cfg.threads, [&](std::size_t i) {
    if (i < m) {
      runs[i] = run_member(init, bg, cfg, cfg.lambdas[i], cfg.dt0 / cfg.lambdas[i]);
    } else if (i == m) {
      refs[0] = run_reference(init.u, bg, cfg, dt_ref);
    } else if (i == m + 1) {
      runs[m] = run_member(init, bg, cfg, cfg.lambdas.back(), 0.5 * cfg.dt0 / cfg.lambdas.back());
    } else {
      refs[1] = run_reference(init.u, bg, cfg, 0.5 * dt_ref);
    }
  });

  SweepReport rep;
  rep.reference_ok = refs[0].ok;
  rep.reference_error = refs[0].error;
  for (std::size_t i = 0; i < m; ++i) {
    SweepMember mem;
    mem.lambda = cfg.lambdas[i];
    mem.dt = cfg.dt0 / cfg.lambdas[i];
    mem.ok = runs[i].ok;
    mem.error = runs[i].error;
    if (mem.ok) {
      mem.e_constraint = constraint_error(runs[i].state, *bg);
      mem.e_u = refs[0].ok ? h1_distance(runs[i].state.u, refs[0].u)
                           : std::numeric_limits<double>::quiet_NaN();
    } else {
      mem.e_constraint = mem.e_u = std::numeric_limits<double>::quiet_NaN();
    }
    rep.members.push_back(std::move(mem));
  }
  if (cfg.control) {
    SweepControl c;
    c.lambda = cfg.lambdas.back();
    c.dt = 0.5 * cfg.dt0 / c.lambda;
    c.ok = runs[m].ok && refs[1].ok && runs[m - 1].ok && refs[0].ok;
    if (c.ok) {
      const ComplexField d_full = runs[m - 1].state.u - refs[0].u;
      const ComplexField d_half = runs[m].state.u - refs[1].u;
      c.e_u_half = sobolev_norm(d_half, SobolevIndex(1.0));
      c.scheme_fraction = h1_distance(d_full, d_half) / sobolev_norm(d_full, SobolevIndex(1.0));
    } else {
      c.e_u_half = c.scheme_fraction = std::numeric_limits<double>::quiet_NaN();
    }
    rep.control = c;
  }
  return rep;
}

void write_sweep_csv(std::ostream& os, const SweepReport& r) {
  os << "lambda,dt,ok,e_constraint,e_u,ratio\n";
  const auto ratios = r.constraint_ratios();
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    const auto& m = r.members[i];
    os << format_double(m.lambda) << ',' << format_double(m.dt) << ',' << (m.ok ? 1 : 0) << ','
       << format_double(m.e_constraint) << ',' << format_double(m.e_u) << ',';
    if (i > 0) os << format_double(ratios[i - 1]);
    os << '\n';
  }
}

std::string to_json(const SweepReport& r) {
  using nlohmann::ordered_json;
  // JSON has no NaN; failed entries become null.
  auto num = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
  ordered_json j;
  j["members"] = ordered_json::array();
  for (const auto& m : r.members) {
    ordered_json e;
    e["lambda"] = m.lambda;
    e["dt"] = m.dt;
    e["ok"] = m.ok;
    e["e_constraint"] = num(m.e_constraint);
    e["e_u"] = num(m.e_u);
    if (!m.ok) e["error"] = m.error;
    j["members"].push_back(e);
  }
  j["constraint_ratios"] = ordered_json::array();
  for (double x : r.constraint_ratios()) j["constraint_ratios"].push_back(num(x));
  j["reference_ok"] = r.reference_ok;
  if (!r.reference_ok) j["reference_error"] = r.reference_error;
  if (r.control) {
    j["control"] = {{"lambda", r.control->lambda},
                    {"dt", r.control->dt},
                    {"ok", r.control->ok},
                    {"e_u_half", num(r.control->e_u_half)},
                    {"scheme_fraction", num(r.control->scheme_fraction)}};
  }
  j["constraint_decreasing"] = r.constraint_decreasing();
  j["e_u_decreasing"] = r.e_u_decreasing();
  return j.dump(2);
}

}  // namespace zsl
