#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zsl/initial_data.hpp"
#include "zsl/solver.hpp"

namespace zsl {

// Subsonic limit: the Zakharov perturbation system at increasing sound speed
// lambda against the perturbed NLS it relaxes to, where
//   n = -|u|^2 - 2 Q Re u.

struct SweepConfig {
  /// Strictly increasing, positive.
  std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0, 16.0};
  /// Shared by every member; v(0) = 0.
  InitialSpec initial{.profile = Profile::prepared_gaussian};
  double t_final = 0.5;
  /// Member k runs with dt = dt0 / lambdas[k]; the NLS reference uses the
  /// smallest of these.
  double dt0 = 4e-3;
  Integrator integrator = Integrator::strang;
  bool dealias = true;
  /// Repeat the last member and the reference with halved dt to bound the
  /// time-stepping share of e_u.
  bool control = true;
  int threads = 1;

  void validate() const;
};

struct SweepMember {
  double lambda = 0.0;
  double dt = 0.0;
  bool ok = false;
  std::string error;
  /// || n + |u|^2 + 2 Q Re u ||_2 at t_final.
  double e_constraint = 0.0;
  /// || u_lambda - u_NLS ||_{H^1} at t_final.
  double e_u = 0.0;
};

struct SweepControl {
  double lambda = 0.0;
  double dt = 0.0;
  bool ok = false;
  double e_u_half = 0.0;
  /// || d(dt) - d(dt/2) ||_{H^1} / || d(dt) ||_{H^1} with d = u_lambda - u_NLS.
  double scheme_fraction = 0.0;
};

struct SweepReport {
  std::vector<SweepMember> members;
  bool reference_ok = false;
  std::string reference_error;
  std::optional<SweepControl> control;

  /// e_constraint(lambda_k) / e_constraint(lambda_{k+1}) for consecutive members.
  std::vector<double> constraint_ratios() const;
  bool constraint_decreasing() const;
  bool e_u_decreasing() const;
  bool all_ok() const;
};

SweepReport run_sweep(const GridPtr& grid, const SweepConfig& cfg);

/// Columns lambda, dt, ok, e_constraint, e_u, ratio.
void write_sweep_csv(std::ostream& os, const SweepReport& r);
std::string to_json(const SweepReport& r);

}  // namespace zsl
