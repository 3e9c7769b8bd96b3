#pragma once

#include <memory>
#include <vector>

#include "zsl/field.hpp"
#include "zsl/soliton.hpp"

namespace zsl {

enum class Integrator { strang, split_duhamel };

/// Time-stepping parameters shared by all integrators.
struct SimParams {
  /// Ion sound speed parameter in n_tt / lambda^2 - Laplacian n = ...
  double lambda = 1.0;
  double dt = 1e-3;
  double t_final = 1.0;
  Integrator integrator = Integrator::strang;
  /// Apply the 2/3 rule after every pointwise product.
  bool dealias = true;

  /// Largest admissible dt * lambda * k_max. The acoustic factor is
  /// propagated exactly, so this is an accuracy bound on the splitting
  /// rather than a hard stability limit: above it the fastest sound waves
  /// turn by more than half a period per step.
  static constexpr double max_acoustic_phase = 3.14159265358979;

  /// Throws UsageError naming the offending parameter.
  void validate(const Grid2D& grid) const;
  /// Number of fixed steps of size dt needed to reach t_final (t_final is
  /// hit exactly only if it is a multiple of dt).
  long steps() const;
};

/// Perturbation unknowns around the line soliton in the gauged frame:
///   i u_t + Laplacian u - u = n u + Q n - Q^2 u
///   n_t = lambda^2 div v
///   v_t = grad n + grad(|u|^2) + 2 grad(Q Re u)
/// All fields are kept in physical representation between steps.
struct ZakharovState {
  double t = 0.0;
  ComplexField u;
  RealField n;
  RealVectorField v;

  static ZakharovState zero(const GridPtr& grid, double t = 0.0);
  const Grid2D& grid() const noexcept { return n.grid(); }
  bool all_finite() const noexcept;
};

/// Half-wave variables n_pm = n +- i (lambda omega)^{-1} n_t, with
/// n = (n_plus + n_minus) / 2. Fields are physical.
struct SplitState {
  double t = 0.0;
  ComplexField u;
  ComplexField n_plus;
  ComplexField n_minus;

  const Grid2D& grid() const noexcept { return u.grid(); }
  bool all_finite() const noexcept;
};

struct Tendency {
  ComplexField du;
  RealField dn;
  RealVectorField dv;
};

/// Full right-hand side of the perturbation system.
Tendency rhs(const ZakharovState& s, const Background& bg, const SimParams& p);

/// n_t = lambda^2 div v
RealField n_dot(const ZakharovState& s, double lambda);

/// Only the gradient part of v is carried by the split variables; the
/// round trip is the identity for curl-free v with zero mean.
SplitState to_split(const ZakharovState& s, double lambda);
ZakharovState from_split(const SplitState& s, double lambda);

/// Strang splitting: half step of the exact linear flow (Schrodinger factor
/// on u, acoustic rotation on (n, v)), a classical RK4 step of the coupling
/// terms with n frozen, another linear half step.
class StrangIntegrator {
 public:
  StrangIntegrator(std::shared_ptr<const Background> bg, SimParams params);
  ZakharovState step(const ZakharovState& s) const;
  const SimParams& params() const noexcept { return params_; }

 private:
  void linear_half(ComplexField& u_hat, ComplexField& n_hat, ComplexField& vx_hat,
                   ComplexField& vy_hat) const;

  // Per-mode tables for the acoustic half step.
  struct AcousticMode {
    double ex, ey, c, s;
  };

  std::shared_ptr<const Background> bg_;
  SimParams params_;
  ComplexField schrodinger_half_;
  std::vector<AcousticMode> acoustic_;
};

/// Integrating-factor RK4 on the Duhamel form of the split system
///   (i d_t + Laplacian - 1) u = n u + Q n - Q^2 u
///   (i d_t -+ lambda omega) n_pm = +- lambda omega (|u|^2 + 2 Q Re u)
/// with the free flows e^{-it(|k|^2+1)} and e^{-+i lambda omega t} applied
/// exactly. Fourth order in dt.
class SplitDuhamelIntegrator {
 public:
  SplitDuhamelIntegrator(std::shared_ptr<const Background> bg, SimParams params);
  SplitState step(const SplitState& s) const;
  const SimParams& params() const noexcept { return params_; }

 private:
  struct Spectral {
    ComplexField u;
    ComplexField np;
    ComplexField nm;
  };
  Spectral nonlinear(const Spectral& y) const;
  void propagate(Spectral& y, const ComplexField& eu, const ComplexField& ep) const;

  std::shared_ptr<const Background> bg_;
  SimParams params_;
  ComplexField eu_half_, eu_full_;
  ComplexField ep_half_, ep_full_;
  std::vector<double> lambda_omega_;
};

/// Perturbed NLS i u_t - u + Laplacian u + |u + Q|^2 (u + Q) - Q^3 = 0 by
/// Strang splitting with an RK4 nonlinear substep.
class PnlsIntegrator {
 public:
  PnlsIntegrator(std::shared_ptr<const Background> bg, double dt, bool dealias = true);
  /// `t` is only used to label a NumericError.
  ComplexField step(const ComplexField& u, double t = 0.0) const;
  double dt() const noexcept { return dt_; }

 private:
  ComplexField nonlinear(const ComplexField& u) const;

  std::shared_ptr<const Background> bg_;
  double dt_;
  bool dealias_;
  ComplexField half_;
};

/// Right-hand side i(Laplacian u - u) + i(|u+Q|^2 (u+Q) - Q^3).
ComplexField pnls_rhs(const ComplexField& u, const Background& bg, bool dealias = true);

// Single-step conveniences. They build the integrator each call, so loops
// should hold an integrator instead.
ZakharovState step_strang(const ZakharovState& s, const std::shared_ptr<const Background>& bg,
                          const SimParams& p);
SplitState step_split_duhamel(const SplitState& s, const std::shared_ptr<const Background>& bg,
                              const SimParams& p);
ComplexField step_pnls(const ComplexField& u, const std::shared_ptr<const Background>& bg,
                       double dt);

/// integral |u + Q|^2 - Q^2
double pnls_mass(const ComplexField& u, const Background& bg);
/// integral (|grad w|^2 - Q_x^2) + (|w|^2 - Q^2) - (|w|^4 - Q^4)/2, w = u + Q
double pnls_hamiltonian(const ComplexField& u, const Background& bg);

}  // namespace zsl
