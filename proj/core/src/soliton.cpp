#include "zsl/soliton.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "zsl/log.hpp"
#include "zsl/spectral.hpp"

namespace zsl {

double eval_q(double x) noexcept {
  const double e = std::exp(-std::abs(x));
  return 2.0 * std::numbers::sqrt2 * e / (1.0 + e * e);
}

double eval_q_prime(double x) noexcept { return -eval_q(x) * std::tanh(x); }

Background::Background(GridPtr grid)
    : grid_(std::move(grid)),
      q_(RealField::sample(grid_, [](double x, double) { return eval_q(x); })),
      q2_(RealField::sample(grid_, [](double x, double) {
        const double q = eval_q(x);
        return q * q;
      })),
      dq_(RealField::sample(grid_, [](double x, double) { return eval_q_prime(x); })) {}

BackgroundComponents Background::components(double t) const {
  const double c = std::numbers::sqrt2 * std::cos(t);
  const double s = std::numbers::sqrt2 * std::sin(t);
  BackgroundComponents out{
      .f_r = q_ * c,
      .g_r = q_ * s,
      .h_r = RealVectorField(dq_ * c, RealField(grid_)),
      .l_r = RealVectorField(dq_ * s, RealField(grid_)),
      .p_r = RealField(grid_),
      .v_r = RealVectorField(grid_),
  };
  return out;
}

OdeCheck ode_residual(const GridPtr& grid) {
  const Background bg(grid);
  const RealField qxx = laplacian(bg.q());
  OdeCheck check;
  for (std::size_t i = 0; i < qxx.size(); ++i) {
    const double q = bg.q()[i];
    check.residual = std::max(check.residual, std::abs(qxx[i] - q + q * q * q));
  }
  check.boundary_value = eval_q(grid->x(0));
  if (check.boundary_value > 1e-10) {
    check.boundary_warning = true;
    char buf[96];
    std::snprintf(buf, sizeof buf, "soliton box too small: Q(-lx/2) = %.3e exceeds 1e-10",
                  check.boundary_value);
    warn(buf);
  }
  return check;
}

}  // namespace zsl
