#include "zsl/hyperbolic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zsl/errors.hpp"
#include "zsl/log.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

using namespace hc;

constexpr int kH[2] = {H1, H2};
constexpr int kL[2] = {L1, L2};
constexpr int kV[2] = {V1, V2};

// Spatial derivatives of every component, plus Laplacians.
struct Derivatives {
  std::array<HyperbolicState, 2> d;
  HyperbolicState lap;
};

Derivatives derivatives(const HyperbolicState& u) {
  Derivatives out;
  for (int c = 0; c < kHyperbolicComponents; ++c) {
    const ComplexField spec = to_spectral(u[c]);
    const auto g = grad(spec);
    out.d[0][c] = to_physical_real(g[0]);
    out.d[1][c] = to_physical_real(g[1]);
    out.lap[c] = to_physical_real(laplacian(spec));
  }
  return out;
}

Vec9 node_of(const HyperbolicState& s, std::size_t i) { return s.node(i); }

}  // namespace

HyperbolicState HyperbolicState::zero(const GridPtr& grid, double t) {
  HyperbolicState s;
  s.t = t;
  for (auto& f : s.c) f = RealField(grid);
  return s;
}

Vec9 HyperbolicState::node(std::size_t i) const {
  Vec9 v;
  for (int k = 0; k < kHyperbolicComponents; ++k) v[k] = (*this)[k][i];
  return v;
}

void HyperbolicState::set_node(std::size_t i, const Vec9& v) {
  for (int k = 0; k < kHyperbolicComponents; ++k) (*this)[k][i] = v[k];
}

double l2_norm(const HyperbolicState& u) {
  double sum = 0.0;
  for (const auto& f : u.c) {
    const double n = l2_norm(f);
    sum += n * n;
  }
  return std::sqrt(sum);
}

BackgroundFields::BackgroundFields(const Background& bg, double t)
    : comps_(bg.components(t)),
      div_h_r_(divergence(comps_.h_r)),
      div_l_r_(divergence(comps_.l_r)) {}

NodeBackground BackgroundFields::at(std::size_t i) const {
  NodeBackground b;
  b.f_r = comps_.f_r[i];
  b.g_r = comps_.g_r[i];
  b.p_r = comps_.p_r[i];
  b.h_r = {comps_.h_r.x[i], comps_.h_r.y[i]};
  b.l_r = {comps_.l_r.x[i], comps_.l_r.y[i]};
  b.div_h_r = div_h_r_[i];
  b.div_l_r = div_l_r_[i];
  return b;
}

// ---------------------------------------------------------------------------
// Coefficient matrices

namespace {

Mat9 transport_block(int j, double f, double g) {
  Mat9 m = Mat9::Zero();
  const int h = kH[j - 1];
  const int l = kL[j - 1];
  m(P, h) = m(h, P) = -g;
  m(P, l) = m(l, P) = f;
  return m;
}

void check_direction(int j) {
  if (j != 1 && j != 2) throw UsageError("direction index must be 1 or 2, got " + std::to_string(j));
}

}  // namespace

Mat9 a_matrix(int j, const Vec9& u) {
  check_direction(j);
  return transport_block(j, u[F], u[G]);
}

Mat9 b_matrix(int j, const NodeBackground& bg) {
  check_direction(j);
  return transport_block(j, bg.f_r, bg.g_r);
}

Mat9 c_matrix(int j) {
  check_direction(j);
  Mat9 m = Mat9::Zero();
  m(P, kV[j - 1]) = m(kV[j - 1], P) = 1.0;
  return m;
}

Mat9 k_matrix() {
  Mat9 m = Mat9::Zero();
  m(F, G) = -1.0;
  m(G, F) = 1.0;
  for (int i = 0; i < 2; ++i) {
    m(kH[i], kL[i]) = -1.0;
    m(kL[i], kH[i]) = 1.0;
  }
  return m;
}

Mat9 d_matrix(const Vec9& u, const NodeBackground& bg) {
  const double f = u[F];
  const double g = u[G];
  const double p = u[P];
  const double fr = bg.f_r;
  const double gr = bg.g_r;
  const double pt = p + bg.p_r;
  const double ft = f + fr;
  const double gt = g + gr;
  const double s = 0.5 * (ft * ft + gt * gt);

  Mat9 m = Mat9::Zero();
  // R1 = F div L_r - G div H_r
  m(P, F) = bg.div_l_r;
  m(P, G) = -bg.div_h_r;

  // R2 = S G + (F^2/2 + G^2/2 + F F_r + G G_r) G_r - P~ G - P G_r
  m(F, P) = -gr;
  m(F, F) = gr * (0.5 * f + fr);
  m(F, G) = s - pt + gr * (0.5 * g + gr);

  // R3 = -S F - (F^2/2 + G^2/2 + F F_r + G G_r) F_r + P~ F + P F_r
  m(G, P) = fr;
  m(G, F) = -s + pt - fr * (0.5 * f + fr);
  m(G, G) = -fr * (0.5 * g + gr);

  for (int i = 0; i < 2; ++i) {
    const int h = kH[i];
    const int l = kL[i];
    const double hr = bg.h_r[static_cast<std::size_t>(i)];
    const double lr = bg.l_r[static_cast<std::size_t>(i)];
    const double ht = u[h] + hr;
    const double lt = u[l] + lr;
    const double cross = ft * ht + gt * lt;

    // R4 = S L + (...) L_r + (F~H~ + G~L~) G
    //      + (F H + G L + F H_r + F_r H + G L_r + G_r L) G_r - P L_r - P_r L - P L
    m(h, P) = -lr;
    m(h, F) = lr * (0.5 * f + fr) + gr * hr;
    m(h, G) = lr * (0.5 * g + gr) + cross + gr * lr;
    m(h, h) = gr * (f + fr);
    m(h, l) = s - bg.p_r - p + gr * (g + gr);

    // R5 = -S H - (...) H_r - (F~H~ + G~L~) F
    //      - (F H + G L + F_r H + F H_r + G_r L + G L_r) F_r + P H + P_r H + P H_r
    m(l, P) = hr;
    m(l, F) = -hr * (0.5 * f + fr) - cross - fr * hr;
    m(l, G) = -hr * (0.5 * g + gr) - fr * lr;
    m(l, h) = -s + p + bg.p_r - fr * (f + fr);
    m(l, l) = -fr * (g + gr);
  }
  return m;
}

CoeffMatrices matrices(const Vec9& u, const NodeBackground& bg) {
  CoeffMatrices m;
  m.a1 = a_matrix(1, u);
  m.a2 = a_matrix(2, u);
  m.b1 = b_matrix(1, bg);
  m.b2 = b_matrix(2, bg);
  m.c1 = c_matrix(1);
  m.c2 = c_matrix(2);
  m.k = k_matrix();
  m.d2 = d_matrix(Vec9::Zero(), bg);
  m.d1 = d_matrix(u, bg) - m.d2;
  return m;
}

// ---------------------------------------------------------------------------

HyperbolicState build_u(const ZakharovState& s, const Background& bg, double lambda) {
  const auto& grid = s.n.grid_ptr();
  require_same_grid(*grid, bg.grid());
  HyperbolicState out = HyperbolicState::zero(grid, s.t);

  const auto& q = bg.q();
  for (std::size_t i = 0; i < out[P].size(); ++i) {
    out[P][i] = s.n[i] + std::norm(s.u[i]) + 2.0 * q[i] * s.u[i].real();
  }

  const auto vv = inv_lap_grad(div(to_spectral(s.v.x), to_spectral(s.v.y)));
  out[V1] = to_physical_real(vv[0]) * (-lambda);
  out[V2] = to_physical_real(vv[1]) * (-lambda);

  const cplx gauge = std::numbers::sqrt2 * std::exp(cplx(0.0, s.t));
  ComplexField w = s.u;
  w *= gauge;
  const auto gw = grad(w);
  const ComplexField wx = to_physical(gw[0]);
  const ComplexField wy = to_physical(gw[1]);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[F][i] = w[i].real();
    out[G][i] = w[i].imag();
    out[H1][i] = wx[i].real();
    out[H2][i] = wy[i].real();
    out[L1][i] = wx[i].imag();
    out[L2][i] = wy[i].imag();
  }
  return out;
}

double w_constraint_norm(const HyperbolicState& u) {
  const RealVectorField gf = gradient(u[F]);
  const RealVectorField gg = gradient(u[G]);
  double sum = 0.0;
  for (std::size_t i = 0; i < gf.x.size(); ++i) {
    const double a = gf.x[i] - u[H1][i];
    const double b = gf.y[i] - u[H2][i];
    const double c = gg.x[i] - u[L1][i];
    const double d = gg.y[i] - u[L2][i];
    sum += a * a + b * b + c * c + d * d;
  }
  return std::sqrt(sum * u.grid().cell_area());
}

HyperbolicState matrix_residual(const HyperbolicState& u_t, const HyperbolicState& u,
                                const Background& bg, double lambda) {
  const Derivatives dv = derivatives(u);
  const BackgroundFields bgf(bg, u.t);
  const Mat9 c1 = lambda * c_matrix(1);
  const Mat9 c2 = lambda * c_matrix(2);
  const Mat9 k = k_matrix();
  HyperbolicState r = HyperbolicState::zero(u[0].grid_ptr(), u.t);
  for (std::size_t i = 0; i < u[0].size(); ++i) {
    const Vec9 x = node_of(u, i);
    const NodeBackground nb = bgf.at(i);
    const Vec9 res = node_of(u_t, i) +
                     (a_matrix(1, x) + b_matrix(1, nb) + c1) * node_of(dv.d[0], i) +
                     (a_matrix(2, x) + b_matrix(2, nb) + c2) * node_of(dv.d[1], i) +
                     d_matrix(x, nb) * x - k * node_of(dv.lap, i);
    r.set_node(i, res);
  }
  return r;
}

HyperbolicState direct_residual(const HyperbolicState& u_t, const HyperbolicState& u,
                                const Background& bg, double lambda) {
  const Derivatives dv = derivatives(u);
  const BackgroundFields bgf(bg, u.t);
  HyperbolicState r = HyperbolicState::zero(u[0].grid_ptr(), u.t);
  const auto& dx = dv.d[0];
  const auto& dy = dv.d[1];
  const auto& lap = dv.lap;
  for (std::size_t i = 0; i < u[0].size(); ++i) {
    const NodeBackground b = bgf.at(i);
    const double p = u[P][i];
    const double f = u[F][i];
    const double g = u[G][i];
    const double fr = b.f_r;
    const double gr = b.g_r;
    const double pr = b.p_r;
    const double ft = f + fr;
    const double gt = g + gr;
    const double pt = p + pr;
    const double s = 0.5 * (ft * ft + gt * gt);
    const double mixed = 0.5 * (f * f + g * g + 2.0 * f * fr + 2.0 * g * gr);
    const double div_v = dx[V1][i] + dy[V2][i];
    const double div_h = dx[H1][i] + dy[H2][i];
    const double div_l = dx[L1][i] + dy[L2][i];
    const double grad_p[2] = {dx[P][i], dy[P][i]};

    const double r1 = f * b.div_l_r - g * b.div_h_r;
    const double r2 = s * g + mixed * gr - pt * g - p * gr;
    const double r3 = -s * f - mixed * fr + pt * f + p * fr;

    r[P][i] = u_t[P][i] + lambda * div_v + ft * div_l - gt * div_h + r1;
    r[V1][i] = u_t[V1][i] + lambda * grad_p[0];
    r[V2][i] = u_t[V2][i] + lambda * grad_p[1];
    r[F][i] = u_t[F][i] + r2 + lap[G][i];
    r[G][i] = u_t[G][i] + r3 - lap[F][i];

    for (int j = 0; j < 2; ++j) {
      const int hi = kH[j];
      const int li = kL[j];
      const double h = u[hi][i];
      const double l = u[li][i];
      const double hr = b.h_r[static_cast<std::size_t>(j)];
      const double lr = b.l_r[static_cast<std::size_t>(j)];
      const double ht = h + hr;
      const double lt = l + lr;
      const double cross = ft * ht + gt * lt;

      const double r4 = s * l + mixed * lr + cross * g +
                        (f * h + g * l + f * hr + fr * h + g * lr + gr * l) * gr - p * lr -
                        pr * l - p * l;
      const double r5 = -s * h - mixed * hr - cross * f -
                        (f * h + g * l + fr * h + f * hr + gr * l + g * lr) * fr + p * h +
                        pr * h + p * hr;

      r[hi][i] = u_t[hi][i] - gt * grad_p[j] + r4 + lap[li][i];
      r[li][i] = u_t[li][i] + ft * grad_p[j] + r5 - lap[hi][i];
    }
  }
  return r;
}

double system_residual(const HyperbolicState& prev, const HyperbolicState& cur,
                       const HyperbolicState& next, double dt, const Background& bg,
                       double lambda) {
  if (!(dt > 0.0)) throw UsageError("system_residual: dt must be positive");
  HyperbolicState u_t = HyperbolicState::zero(cur[0].grid_ptr(), cur.t);
  for (int c = 0; c < kHyperbolicComponents; ++c) {
    u_t[c] = (next[c] - prev[c]) * (0.5 / dt);
  }
  return l2_norm(matrix_residual(u_t, cur, bg, lambda));
}

// ---------------------------------------------------------------------------

ComplexField mollifier_symbol(const GridPtr& grid, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw UsageError("mollifier width must be positive, got " + std::to_string(eps));
  }
  const auto& g = *grid;
  std::vector<cplx> kernel(g.size());
  double mass = 0.0;
  for (int ix = 0; ix < g.nx(); ++ix) {
    const double x = g.mode_x(ix) * g.dx() / eps;
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double y = g.mode_y(iy) * g.dy() / eps;
      const double r2 = x * x + y * y;
      const double v = r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
      kernel[g.index(ix, iy)] = v;
      mass += v;
    }
  }
  // Discrete unit mass, so constants pass through unchanged.
  for (auto& v : kernel) v /= mass;
  g.forward(kernel.data());
  return ComplexField(grid, Repr::spectral, std::move(kernel));
}

RealField mollify(const RealField& f, double eps) {
  const ComplexField sym = mollifier_symbol(f.grid_ptr(), eps);
  const auto& g = f.grid();
  if (eps < std::max(g.dx(), g.dy())) {
    warn("mollifier width " + std::to_string(eps) + " is below the grid spacing");
  }
  ComplexField spec = to_spectral(f);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= sym[i];
  return to_physical_real(spec);
}

}  // namespace zsl
