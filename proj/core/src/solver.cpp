#include "zsl/solver.hpp"

#include <cmath>
#include <string>

#include "zsl/errors.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

constexpr cplx I{0.0, 1.0};

// Growth beyond this factor in a single step is treated as a blow-up, unless
// the state is still below the floor (round-off sized states may jump by
// large factors without meaning anything).
constexpr double kGrowthLimit = 10.0;
constexpr double kGrowthFloor = 1e-8;

void check_step(double before, double after, bool finite, double t) {
  if (!finite || !std::isfinite(after)) {
    throw NumericError("non-finite values after time step", t);
  }
  if (after > kGrowthLimit * before && after > kGrowthFloor) {
    throw NumericError("state norm grew from " + std::to_string(before) + " to " +
                           std::to_string(after) + " in one step",
                       t);
  }
}

double state_norm(const ComplexField& u, const RealField& n, const RealVectorField& v) {
  const double a = l2_norm(u);
  const double b = l2_norm(n);
  const double c = l2_norm(v);
  return std::sqrt(a * a + b * b + c * c);
}

double split_norm(const SplitState& s) {
  const double a = l2_norm(s.u);
  const double b = l2_norm(s.n_plus);
  const double c = l2_norm(s.n_minus);
  return std::sqrt(a * a + b * b + c * c);
}

// Physical product -> physical, 2/3-truncated when requested.
ComplexField truncate(ComplexField f, bool on) {
  if (!on) return f;
  ComplexField s = to_spectral(f);
  dealias_in_place(s);
  return to_physical(s);
}

// (n - Q^2) u + Q n
ComplexField coupling_product(const ComplexField& u, const RealField& n, const Background& bg) {
  ComplexField out(u.grid_ptr(), Repr::physical);
  const auto& q = bg.q();
  const auto& q2 = bg.q2();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (n[i] - q2[i]) * u[i] + q[i] * n[i];
  }
  return out;
}

// |u|^2 + 2 Q Re u
RealField source_density(const ComplexField& u, const Background& bg) {
  RealField out(u.grid_ptr());
  const auto& q = bg.q();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::norm(u[i]) + 2.0 * q[i] * u[i].real();
  }
  return out;
}

ComplexField spectral_source(const ComplexField& u, const Background& bg, bool dealias_on) {
  ComplexField s = to_spectral(source_density(u, bg));
  if (dealias_on) dealias_in_place(s);
  return s;
}

ComplexField schrodinger_factor(const GridPtr& grid, double tau) {
  ComplexField e(grid, Repr::spectral);
  const auto& kx = grid->kx();
  const auto& ky = grid->ky();
  for (int ix = 0; ix < grid->nx(); ++ix) {
    for (int iy = 0; iy < grid->ny(); ++iy) {
      const double w = kx[ix] * kx[ix] + ky[iy] * ky[iy] + 1.0;
      e.at(ix, iy) = std::exp(-I * (w * tau));
    }
  }
  return e;
}

// e^{-i lambda |k_d| tau} with the derivative wavenumbers, so that the half
// waves see the same discrete Laplacian as div(grad).
ComplexField wave_factor(const GridPtr& grid, double lambda, double tau) {
  ComplexField e(grid, Repr::spectral);
  const auto& kx = grid->kx_deriv();
  const auto& ky = grid->ky_deriv();
  for (int ix = 0; ix < grid->nx(); ++ix) {
    for (int iy = 0; iy < grid->ny(); ++iy) {
      const double k = std::hypot(kx[ix], ky[iy]);
      e.at(ix, iy) = std::exp(-I * (lambda * k * tau));
    }
  }
  return e;
}

void multiply(ComplexField& f, const ComplexField& e) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= e[i];
}

// a + h b, both spectral
ComplexField axpy(const ComplexField& a, double h, const ComplexField& b) {
  ComplexField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * b[i];
  return out;
}

}  // namespace

void SimParams::validate(const Grid2D& grid) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw UsageError("sim.lambda must be positive and finite, got " + std::to_string(lambda));
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw UsageError("sim.dt must be positive and finite, got " + std::to_string(dt));
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw UsageError("sim.t_final must be >= 0, got " + std::to_string(t_final));
  }
  const double phase = dt * lambda * grid.k_max();
  if (phase > max_acoustic_phase) {
    throw UsageError("sim.dt too large: dt * lambda * k_max = " + std::to_string(phase) +
                     " exceeds " + std::to_string(max_acoustic_phase));
  }
}

long SimParams::steps() const {
  // Tolerate t_final being an exact multiple of dt up to rounding.
  const double r = t_final / dt;
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-9 * std::max(1.0, r)) return static_cast<long>(nearest);
  return static_cast<long>(std::ceil(r));
}

ZakharovState ZakharovState::zero(const GridPtr& grid, double t) {
  return {t, ComplexField(grid, Repr::physical), RealField(grid), RealVectorField(grid)};
}

bool ZakharovState::all_finite() const noexcept {
  return std::isfinite(t) && u.all_finite() && n.all_finite() && v.all_finite();
}

bool SplitState::all_finite() const noexcept {
  return std::isfinite(t) && u.all_finite() && n_plus.all_finite() && n_minus.all_finite();
}

RealField n_dot(const ZakharovState& s, double lambda) {
  return divergence(s.v) * (lambda * lambda);
}

Tendency rhs(const ZakharovState& s, const Background& bg, const SimParams& p) {
  ComplexField lin = to_spectral(s.u);
  const auto& g = s.grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      lin.at(ix, iy) *= -I * (kx[ix] * kx[ix] + ky[iy] * ky[iy] + 1.0);
    }
  }
  ComplexField du = to_physical(lin);
  const ComplexField prod = truncate(coupling_product(s.u, s.n, bg), p.dealias);
  for (std::size_t i = 0; i < du.size(); ++i) du[i] -= I * prod[i];

  RealField dn = n_dot(s, p.lambda);

  ComplexField pot = to_spectral(s.n);
  pot += spectral_source(s.u, bg, p.dealias);
  auto gr = grad(pot);
  RealVectorField dv{to_physical_real(gr[0]), to_physical_real(gr[1])};
  if (!du.all_finite() || !dn.all_finite() || !dv.all_finite()) {
    throw NumericError("non-finite tendency", s.t);
  }
  return {std::move(du), std::move(dn), std::move(dv)};
}

SplitState to_split(const ZakharovState& s, double lambda) {
  const ComplexField n_hat = to_spectral(s.n);
  const ComplexField nt_hat = div(to_spectral(s.v.x), to_spectral(s.v.y));
  ComplexField plus(n_hat.grid_ptr(), Repr::spectral);
  ComplexField minus(n_hat.grid_ptr(), Repr::spectral);
  const auto& g = s.grid();
  const auto& kx = g.kx_deriv();
  const auto& ky = g.ky_deriv();
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double k = std::hypot(kx[ix], ky[iy]);
      // i (lambda k)^{-1} n_t with n_t = lambda^2 div v
      const cplx corr = k > 0.0 ? I * (lambda / k) * nt_hat.at(ix, iy) : cplx{};
      plus.at(ix, iy) = n_hat.at(ix, iy) + corr;
      minus.at(ix, iy) = n_hat.at(ix, iy) - corr;
    }
  }
  return {s.t, s.u, to_physical(plus), to_physical(minus)};
}

ZakharovState from_split(const SplitState& s, double lambda) {
  RealField n(s.u.grid_ptr());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = 0.5 * (s.n_plus[i] + s.n_minus[i]).real();
  ComplexField d = to_spectral(s.n_plus - s.n_minus);
  const auto& g = s.grid();
  const auto& kx = g.kx_deriv();
  const auto& ky = g.ky_deriv();
  ComplexField vx(d.grid_ptr(), Repr::spectral);
  ComplexField vy(d.grid_ptr(), Repr::spectral);
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      if (k2 == 0.0) continue;
      // n_t = lambda |k| (n+ - n-) / (2i);  v = Laplacian^{-1} grad n_t / lambda^2
      const cplx nt = lambda * std::sqrt(k2) * d.at(ix, iy) / (2.0 * I);
      vx.at(ix, iy) = -I * (kx[ix] / k2) * nt / (lambda * lambda);
      vy.at(ix, iy) = -I * (ky[iy] / k2) * nt / (lambda * lambda);
    }
  }
  return {s.t, s.u, std::move(n), {to_physical_real(vx), to_physical_real(vy)}};
}

// ---------------------------------------------------------------------------

StrangIntegrator::StrangIntegrator(std::shared_ptr<const Background> bg, SimParams params)
    : bg_(std::move(bg)), params_(params) {
  params_.validate(bg_->grid());
  schrodinger_half_ = schrodinger_factor(bg_->grid_ptr(), 0.5 * params_.dt);
  const auto& g = bg_->grid();
  const auto& kx = g.kx_deriv();
  const auto& ky = g.ky_deriv();
  const double tau = 0.5 * params_.dt;
  acoustic_.resize(g.size());
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double k = std::hypot(kx[ix], ky[iy]);
      auto& m = acoustic_[g.index(ix, iy)];
      if (k == 0.0) {
        m = {0.0, 0.0, 1.0, 0.0};
      } else {
        const double phase = params_.lambda * k * tau;
        m = {kx[ix] / k, ky[iy] / k, std::cos(phase), std::sin(phase)};
      }
    }
  }
}

void StrangIntegrator::linear_half(ComplexField& u_hat, ComplexField& n_hat, ComplexField& vx_hat,
                                   ComplexField& vy_hat) const {
  multiply(u_hat, schrodinger_half_);

  // Acoustic part n_t = lambda^2 div v, v_t = grad n. Only the longitudinal
  // component w = k.v/|k| couples to n; the pair rotates exactly. The zero
  // mode has ex = ey = 0 and is left alone.
  const double lam = params_.lambda;
  for (std::size_t i = 0; i < acoustic_.size(); ++i) {
    const auto& m = acoustic_[i];
    const cplx n0 = n_hat[i];
    const cplx w0 = m.ex * vx_hat[i] + m.ey * vy_hat[i];
    const cplx n1 = m.c * n0 + I * lam * m.s * w0;
    const cplx dw = (m.c - 1.0) * w0 + I * (m.s / lam) * n0;
    n_hat[i] = n1;
    vx_hat[i] += dw * m.ex;
    vy_hat[i] += dw * m.ey;
  }
}

ZakharovState StrangIntegrator::step(const ZakharovState& s) const {
  const double before = state_norm(s.u, s.n, s.v);
  const double h = params_.dt;
  const bool da = params_.dealias;
  const Background& bg = *bg_;

  ComplexField uh = to_spectral(s.u);
  ComplexField nh = to_spectral(s.n);
  ComplexField vxh = to_spectral(s.v.x);
  ComplexField vyh = to_spectral(s.v.y);
  linear_half(uh, nh, vxh, vyh);

  const ComplexField u = to_physical(uh);
  const RealField n = to_physical_real(nh);

  // Coupling substep with n frozen: u_t = -i((n - Q^2) u + Q n),
  // v_t = grad(|u|^2 + 2 Q Re u). v does not feed back, so its RK4 update is
  // the gradient of the weighted sum of stage sources.
  auto f = [&](const ComplexField& w) {
    ComplexField out = truncate(coupling_product(w, n, bg), da);
    out *= -I;
    return out;
  };
  RealField src(u.grid_ptr());
  auto accumulate = [&](const ComplexField& w, double weight) {
    const auto& q = bg.q();
    for (std::size_t i = 0; i < src.size(); ++i) {
      src[i] += weight * (std::norm(w[i]) + 2.0 * q[i] * w[i].real());
    }
  };
  auto stage = [](const ComplexField& base, double a, const ComplexField& k) {
    ComplexField out = base;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * k[i];
    return out;
  };

  const ComplexField k1 = f(u);
  accumulate(u, 1.0);
  const ComplexField u2 = stage(u, 0.5 * h, k1);
  const ComplexField k2 = f(u2);
  accumulate(u2, 2.0);
  const ComplexField u3 = stage(u, 0.5 * h, k2);
  const ComplexField k3 = f(u3);
  accumulate(u3, 2.0);
  const ComplexField u4 = stage(u, h, k3);
  const ComplexField k4 = f(u4);
  accumulate(u4, 1.0);

  ComplexField un = u;
  for (std::size_t i = 0; i < un.size(); ++i) {
    un[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  ComplexField src_hat = to_spectral(src);
  if (da) dealias_in_place(src_hat);
  src_hat *= cplx(h / 6.0);
  const auto dv = grad(src_hat);
  vxh += dv[0];
  vyh += dv[1];

  uh = to_spectral(un);
  linear_half(uh, nh, vxh, vyh);

  ZakharovState out{s.t + h, to_physical(uh), to_physical_real(nh),
                    {to_physical_real(vxh), to_physical_real(vyh)}};
  check_step(before, state_norm(out.u, out.n, out.v), out.all_finite(), out.t);
  return out;
}

// ---------------------------------------------------------------------------

SplitDuhamelIntegrator::SplitDuhamelIntegrator(std::shared_ptr<const Background> bg,
                                               SimParams params)
    : bg_(std::move(bg)), params_(params) {
  params_.validate(bg_->grid());
  const auto& grid = bg_->grid_ptr();
  eu_half_ = schrodinger_factor(grid, 0.5 * params_.dt);
  eu_full_ = schrodinger_factor(grid, params_.dt);
  ep_half_ = wave_factor(grid, params_.lambda, 0.5 * params_.dt);
  ep_full_ = wave_factor(grid, params_.lambda, params_.dt);
  const auto& kx = grid->kx_deriv();
  const auto& ky = grid->ky_deriv();
  lambda_omega_.resize(grid->size());
  for (int ix = 0; ix < grid->nx(); ++ix) {
    for (int iy = 0; iy < grid->ny(); ++iy) {
      lambda_omega_[grid->index(ix, iy)] = params_.lambda * std::hypot(kx[ix], ky[iy]);
    }
  }
}

SplitDuhamelIntegrator::Spectral SplitDuhamelIntegrator::nonlinear(const Spectral& y) const {
  const Background& bg = *bg_;
  const ComplexField u = to_physical(y.u);
  const ComplexField nsum = to_physical(y.np + y.nm);
  RealField n(u.grid_ptr());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = 0.5 * nsum[i].real();

  ComplexField du = to_spectral(coupling_product(u, n, bg));
  if (params_.dealias) dealias_in_place(du);
  du *= -I;

  const ComplexField src = spectral_source(u, bg, params_.dealias);
  ComplexField dp(u.grid_ptr(), Repr::spectral);
  ComplexField dm(u.grid_ptr(), Repr::spectral);
  for (std::size_t i = 0; i < dp.size(); ++i) {
    const cplx a = I * lambda_omega_[i] * src[i];
    dp[i] = -a;
    dm[i] = a;
  }
  return {std::move(du), std::move(dp), std::move(dm)};
}

void SplitDuhamelIntegrator::propagate(Spectral& y, const ComplexField& eu,
                                       const ComplexField& ep) const {
  multiply(y.u, eu);
  multiply(y.np, ep);
  for (std::size_t i = 0; i < y.nm.size(); ++i) y.nm[i] *= std::conj(ep[i]);
}

SplitState SplitDuhamelIntegrator::step(const SplitState& s) const {
  const double before = split_norm(s);
  const double h = params_.dt;
  const Spectral y{to_spectral(s.u), to_spectral(s.n_plus), to_spectral(s.n_minus)};

  auto combine = [](const Spectral& a, double c, const Spectral& b) {
    return Spectral{axpy(a.u, c, b.u), axpy(a.np, c, b.np), axpy(a.nm, c, b.nm)};
  };

  const Spectral k1 = nonlinear(y);
  Spectral ya = combine(y, 0.5 * h, k1);
  propagate(ya, eu_half_, ep_half_);
  const Spectral k2 = nonlinear(ya);

  Spectral y_half = y;
  propagate(y_half, eu_half_, ep_half_);
  const Spectral yb = combine(y_half, 0.5 * h, k2);
  const Spectral k3 = nonlinear(yb);

  Spectral k3_half = k3;
  propagate(k3_half, eu_half_, ep_half_);
  Spectral y_full = y;
  propagate(y_full, eu_full_, ep_full_);
  const Spectral yc = combine(y_full, h, k3_half);
  const Spectral k4 = nonlinear(yc);

  // y+ = E y + h/6 (E k1 + 2 E_half (k2 + k3) + k4)
  Spectral k1_full = k1;
  propagate(k1_full, eu_full_, ep_full_);
  Spectral mid = combine(k2, 1.0, k3);
  propagate(mid, eu_half_, ep_half_);
  Spectral out = combine(y_full, h / 6.0, k1_full);
  out = combine(out, h / 3.0, mid);
  out = combine(out, h / 6.0, k4);

  SplitState next{s.t + h, to_physical(out.u), to_physical(out.np), to_physical(out.nm)};
  check_step(before, split_norm(next), next.all_finite(), next.t);
  return next;
}

// ---------------------------------------------------------------------------

namespace {

// i (g (u + Q) + Q^2 u) with g = |u|^2 + 2 Q Re u; equals
// i (|u + Q|^2 (u + Q) - Q^3) without the cancellation of large terms.
ComplexField pnls_nonlinear(const ComplexField& u, const Background& bg, bool da) {
  RealField g = source_density(u, bg);
  if (da) {
    ComplexField gh = to_spectral(g);
    dealias_in_place(gh);
    g = to_physical_real(gh);
  }
  const auto& q = bg.q();
  const auto& q2 = bg.q2();
  ComplexField out(u.grid_ptr(), Repr::physical);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g[i] * (u[i] + q[i]) + q2[i] * u[i];
  out = truncate(std::move(out), da);
  out *= I;
  return out;
}

}  // namespace

PnlsIntegrator::PnlsIntegrator(std::shared_ptr<const Background> bg, double dt, bool dealias)
    : bg_(std::move(bg)), dt_(dt), dealias_(dealias) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw UsageError("sim.dt must be positive and finite, got " + std::to_string(dt));
  }
  half_ = schrodinger_factor(bg_->grid_ptr(), 0.5 * dt_);
}

ComplexField PnlsIntegrator::nonlinear(const ComplexField& u) const {
  return pnls_nonlinear(u, *bg_, dealias_);
}

ComplexField PnlsIntegrator::step(const ComplexField& u0, double t) const {
  const double before = l2_norm(u0);
  const double h = dt_;
  ComplexField uh = to_spectral(u0);
  multiply(uh, half_);
  const ComplexField u = to_physical(uh);

  auto stage = [](const ComplexField& base, double a, const ComplexField& k) {
    ComplexField out = base;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * k[i];
    return out;
  };
  const ComplexField k1 = nonlinear(u);
  const ComplexField k2 = nonlinear(stage(u, 0.5 * h, k1));
  const ComplexField k3 = nonlinear(stage(u, 0.5 * h, k2));
  const ComplexField k4 = nonlinear(stage(u, h, k3));
  ComplexField un = u;
  for (std::size_t i = 0; i < un.size(); ++i) {
    un[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  uh = to_spectral(un);
  multiply(uh, half_);
  ComplexField out = to_physical(uh);
  check_step(before, l2_norm(out), out.all_finite(), t + h);
  return out;
}

ComplexField pnls_rhs(const ComplexField& u, const Background& bg, bool dealias) {
  ComplexField lin = to_spectral(u);
  const auto& g = bg.grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      lin.at(ix, iy) *= -I * (kx[ix] * kx[ix] + ky[iy] * ky[iy] + 1.0);
    }
  }
  ComplexField out = to_physical(lin);
  out += pnls_nonlinear(u, bg, dealias);
  return out;
}

ZakharovState step_strang(const ZakharovState& s, const std::shared_ptr<const Background>& bg,
                          const SimParams& p) {
  return StrangIntegrator(bg, p).step(s);
}

SplitState step_split_duhamel(const SplitState& s, const std::shared_ptr<const Background>& bg,
                              const SimParams& p) {
  return SplitDuhamelIntegrator(bg, p).step(s);
}

ComplexField step_pnls(const ComplexField& u, const std::shared_ptr<const Background>& bg,
                       double dt) {
  return PnlsIntegrator(bg, dt).step(u);
}

double pnls_mass(const ComplexField& u, const Background& bg) {
  return integrate(source_density(u, bg));
}

double pnls_hamiltonian(const ComplexField& u, const Background& bg) {
  const auto& q = bg.q();
  ComplexField w = u;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += q[i];
  const auto gw = grad(w);
  const auto gq = grad(ComplexField(q));
  const ComplexField wx = to_physical(gw[0]);
  const ComplexField wy = to_physical(gw[1]);
  const ComplexField qx = to_physical(gq[0]);
  RealField density(u.grid_ptr());
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double q2 = q[i] * q[i];
    const double w2 = std::norm(w[i]);
    density[i] = std::norm(wx[i]) + std::norm(wy[i]) - std::norm(qx[i]) + (w2 - q2) -
                 0.5 * (w2 * w2 - q2 * q2);
  }
  return integrate(density);
}

}  // namespace zsl
