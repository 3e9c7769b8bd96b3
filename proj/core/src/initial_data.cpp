#include "zsl/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "zsl/errors.hpp"

namespace zsl {

void InitialSpec::validate() const {
  if (!std::isfinite(amplitude)) throw UsageError("initial.amplitude must be finite");
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw UsageError("initial.width must be > 0, got " + std::to_string(width));
  }
  if (!std::isfinite(center[0]) || !std::isfinite(center[1])) {
    throw UsageError("initial.center must be finite");
  }
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::zero:
      return "zero";
    case Profile::gaussian:
      return "gaussian";
    case Profile::mode:
      return "mode";
    case Profile::prepared_gaussian:
      return "prepared-gaussian";
  }
  return "zero";
}

Profile profile_from_string(const std::string& name) {
  for (Profile p : {Profile::zero, Profile::gaussian, Profile::mode, Profile::prepared_gaussian}) {
    if (to_string(p) == name) return p;
  }
  throw UsageError("initial.profile: unknown profile '" + name +
                   "' (valid: zero, gaussian, mode, prepared-gaussian)");
}

ZakharovState make_initial(const InitialSpec& spec, const Background& bg) {
  spec.validate();
  const GridPtr& grid = bg.grid_ptr();
  ZakharovState s = ZakharovState::zero(grid);
  switch (spec.profile) {
    case Profile::zero:
      break;
    case Profile::gaussian:
    case Profile::prepared_gaussian: {
      const double w2 = spec.width * spec.width;
      s.u = ComplexField::sample(grid, [&](double x, double y) {
        const double dx = x - spec.center[0];
        const double dy = y - spec.center[1];
        return cplx(spec.amplitude * std::exp(-(dx * dx + dy * dy) / w2), 0.0);
      });
      break;
    }
    case Profile::mode: {
      const double kx = 2.0 * std::numbers::pi * spec.k[0] / grid->lx();
      const double ky = 2.0 * std::numbers::pi * spec.k[1] / grid->ly();
      s.u = ComplexField::sample(grid, [&](double x, double y) {
        return spec.amplitude * std::polar(1.0, kx * x + ky * y);
      });
      break;
    }
  }
  if (spec.profile == Profile::prepared_gaussian) {
    const auto& q = bg.q();
    for (std::size_t i = 0; i < s.n.size(); ++i) {
      const cplx u = s.u[i];
      s.n[i] = -std::norm(u) - 2.0 * q[i] * u.real();
    }
  }
  return s;
}

}  // namespace zsl
