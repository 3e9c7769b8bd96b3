#pragma once

#include "zsl/field.hpp"

namespace zsl {

/// Ground state Q(x) = 2 sqrt(2) / (e^x + e^{-x}), the positive even solution
/// of Q'' - Q + Q^3 = 0. Evaluated as 2 sqrt(2) e^{-|x|} / (1 + e^{-2|x|}) so
/// that it underflows gracefully instead of overflowing.
double eval_q(double x) noexcept;

/// Q'(x) = -Q(x) tanh(x).
double eval_q_prime(double x) noexcept;

/// Background fields of the line soliton in the frame where
/// (u, n) = (e^{it} Q, -Q^2), written in the real variables
///   sqrt(2) e^{it} Q = F_r + i G_r,  sqrt(2) grad(e^{it} Q) = H_r + i L_r.
/// P_r = -Q^2 + |e^{it} Q|^2 and V_r vanish identically.
struct BackgroundComponents {
  RealField f_r;
  RealField g_r;
  RealVectorField h_r;
  RealVectorField l_r;
  RealField p_r;
  RealVectorField v_r;
};

/// The line soliton sampled on a grid. Q depends on x only, so the sampled
/// field is constant along y.
class Background {
 public:
  explicit Background(GridPtr grid);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Grid2D& grid() const noexcept { return *grid_; }

  const RealField& q() const noexcept { return q_; }
  const RealField& q2() const noexcept { return q2_; }
  /// Analytic Q_x.
  const RealField& dq() const noexcept { return dq_; }

  BackgroundComponents components(double t) const;

 private:
  GridPtr grid_;
  RealField q_;
  RealField q2_;
  RealField dq_;
};

struct OdeCheck {
  /// max |Q_xx - Q + Q^3| with Q_xx taken spectrally.
  double residual = 0.0;
  /// Q at the box edge x = -lx/2.
  double boundary_value = 0.0;
  bool boundary_warning = false;
};

/// Spectral residual of the ground-state ODE on `grid`. Emits a warning (and
/// sets `boundary_warning`) when Q at the box edge exceeds 1e-10, i.e. when
/// the periodic box is too small to hold the soliton.
OdeCheck ode_residual(const GridPtr& grid);

}  // namespace zsl
