#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zsl/errors.hpp"
#include "zsl/hyperbolic.hpp"
#include "zsl/initial_data.hpp"
#include "zsl/log.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

constexpr double kPi = std::numbers::pi;

NodeBackground random_background(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  NodeBackground b;
  b.f_r = d(rng);
  b.g_r = d(rng);
  b.p_r = d(rng);
  b.h_r = {d(rng), d(rng)};
  b.l_r = {d(rng), d(rng)};
  b.div_h_r = d(rng);
  b.div_l_r = d(rng);
  return b;
}

Vec9 random_vec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  Vec9 v;
  for (int i = 0; i < 9; ++i) v[i] = d(rng);
  return v;
}

TEST(HyperbolicMatrices, SymmetryAtRandomNodes) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec9 u = random_vec(rng);
    const NodeBackground b = random_background(rng);
    const CoeffMatrices m = matrices(u, b);
    for (const Mat9* s : {&m.a1, &m.a2, &m.b1, &m.b2, &m.c1, &m.c2}) {
      EXPECT_EQ((*s - s->transpose()).cwiseAbs().maxCoeff(), 0.0);
    }
    EXPECT_EQ((m.k + m.k.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LT((m.d1 + m.d2 - d_matrix(u, b)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(HyperbolicMatrices, FixedEntries) {
  using namespace hc;
  const Mat9 c1 = c_matrix(1);
  EXPECT_EQ(c1(P, V1), 1.0);
  EXPECT_EQ(c1.cwiseAbs().sum(), 2.0);
  Vec9 u = Vec9::Zero();
  u[F] = 3.0;
  u[G] = 5.0;
  const Mat9 a2 = a_matrix(2, u);
  EXPECT_EQ(a2(P, H2), -5.0);
  EXPECT_EQ(a2(P, L2), 3.0);
  EXPECT_EQ(a2(P, H1), 0.0);
  const Mat9 k = k_matrix();
  EXPECT_EQ(k(F, G), -1.0);
  EXPECT_EQ(k(L1, H1), 1.0);
  EXPECT_THROW(a_matrix(3, u), UsageError);
  EXPECT_THROW(c_matrix(0), UsageError);
}

TEST(HyperbolicMatrices, ZerothOrderTermsVanishWithoutPerturbation) {
  std::mt19937_64 rng(11);
  const NodeBackground b = random_background(rng);
  EXPECT_EQ((d_matrix(Vec9::Zero(), b) * Vec9::Zero()).norm(), 0.0);
  // D2 alone is the linearization: D(eps u) eps u / eps -> D2 u.
  const Vec9 u = random_vec(rng);
  const double eps = 1e-7;
  const Vec9 lin = d_matrix(eps * u, b) * u;
  EXPECT_LT((lin - d_matrix(Vec9::Zero(), b) * u).norm(), 1e-5 * u.norm());
}

TEST(BuildU, PlaneWaveAgainstClosedForm) {
  auto grid = make_grid(32, 32, 20.0, 20.0);
  Background bg(grid);
  const double a = 0.2, kx = 2.0 * kPi * 2 / 20.0, ky = 2.0 * kPi / 20.0, t = 0.7, lambda = 3.0;
  ZakharovState s = ZakharovState::zero(grid, t);
  s.u = ComplexField::sample(grid, [&](double x, double y) { return a * std::polar(1.0, kx * x + ky * y); });
  s.n = RealField::sample(grid, [](double x, double) { return 0.1 * std::cos(2.0 * kPi * x / 20.0); });
  s.v.x = RealField::sample(grid, [&](double x, double) { return std::sin(kx * x); });
  const HyperbolicState u = build_u(s, bg, lambda);
  using namespace hc;
  for (int ix = 0; ix < grid->nx(); ix += 3) {
    for (int iy = 0; iy < grid->ny(); iy += 5) {
      const std::size_t i = grid->index(ix, iy);
      const double x = grid->x(ix), y = grid->y(iy);
      const cplx w = std::sqrt(2.0) * a * std::polar(1.0, kx * x + ky * y + t);
      EXPECT_NEAR(u[F][i], w.real(), 1e-14);
      EXPECT_NEAR(u[G][i], w.imag(), 1e-14);
      const cplx wx = cplx(0.0, kx) * w, wy = cplx(0.0, ky) * w;
      EXPECT_NEAR(u[H1][i], wx.real(), 1e-13);
      EXPECT_NEAR(u[L1][i], wx.imag(), 1e-13);
      EXPECT_NEAR(u[H2][i], wy.real(), 1e-13);
      EXPECT_NEAR(u[L2][i], wy.imag(), 1e-13);
      const double q = eval_q(x);
      const cplx ug = a * std::polar(1.0, kx * x + ky * y);
      EXPECT_NEAR(u[P][i], s.n[i] + a * a + 2.0 * q * ug.real(), 1e-14);
      // v = (sin kx x, 0) is a gradient, so V = -lambda v.
      EXPECT_NEAR(u[V1][i], -lambda * std::sin(kx * x), 1e-13);
      EXPECT_NEAR(u[V2][i], 0.0, 1e-13);
    }
  }
  EXPECT_LT(w_constraint_norm(u), 1e-12);
}

TEST(BuildU, DropsSolenoidalVelocity) {
  auto grid = make_grid(32, 32, 20.0, 20.0);
  Background bg(grid);
  ZakharovState s = ZakharovState::zero(grid);
  const double k = 2.0 * kPi / 20.0;
  s.v.x = RealField::sample(grid, [&](double, double y) { return std::cos(k * y); });
  const HyperbolicState u = build_u(s, bg, 1.0);
  EXPECT_LT(l2_norm(u), 1e-13);
}

// Random low-mode trigonometric polynomial.
RealField trig(const GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-0.3, 0.3);
  double c[3][3];
  for (auto& r : c) {
    for (double& v : r) v = d(rng);
  }
  const double ax = 2.0 * kPi / g->lx(), ay = 2.0 * kPi / g->ly();
  return RealField::sample(g, [&](double x, double y) {
    double s = 0.0;
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 3; ++n) s += c[m][n] * std::cos(m * ax * x + n * ay * y + m - n);
    }
    return s;
  });
}

TEST(Residual, MatrixFormMatchesComponentEquations) {
  auto grid = make_grid(32, 32, 20.0, 20.0);
  Background bg(grid);
  std::mt19937_64 rng(3);
  HyperbolicState u = HyperbolicState::zero(grid, 0.4), ut = HyperbolicState::zero(grid, 0.4);
  for (int c = 0; c < kHyperbolicComponents; ++c) {
    u[c] = trig(grid, rng);
    ut[c] = trig(grid, rng);
  }
  const HyperbolicState a = matrix_residual(ut, u, bg, 2.5);
  const HyperbolicState b = direct_residual(ut, u, bg, 2.5);
  double diff = 0.0, scale = 1.0;
  for (int c = 0; c < kHyperbolicComponents; ++c) {
    for (std::size_t i = 0; i < a[c].size(); ++i) {
      diff = std::max(diff, std::abs(a[c][i] - b[c][i]));
      scale = std::max(scale, std::abs(b[c][i]));
    }
  }
  EXPECT_LT(diff / scale, 1e-12);
}

TEST(Residual, SmallAlongAResolvedTrajectory) {
  auto bg = std::make_shared<const Background>(make_grid(128, 128, 30.0, 30.0));
  InitialSpec spec;
  spec.profile = Profile::gaussian;
  spec.amplitude = 0.1;
  SimParams p;
  p.dealias = false;
  auto residual_at = [&](double dt) {
    p.dt = dt;
    StrangIntegrator integ(bg, p);
    ZakharovState s = make_initial(spec, *bg);
    const long k = std::lround(0.1 / dt);
    std::vector<HyperbolicState> w;
    for (long i = 0; i <= k + 1; ++i) {
      if (i > 0) s = integ.step(s);
      s.t = static_cast<double>(i) * dt;
      if (i >= k - 1) w.push_back(build_u(s, *bg, p.lambda));
    }
    return system_residual(w[0], w[1], w[2], dt, *bg, p.lambda);
  };
  const double r1 = residual_at(4e-3);
  const double r2 = residual_at(2e-3);
  EXPECT_GT(r1 / r2, 3.0) << r1 << " " << r2;
}

TEST(Mollifier, UnitMassAndConvergence) {
  auto grid = make_grid(64, 64, 2.0 * kPi, 2.0 * kPi);
  const ComplexField sym = mollifier_symbol(grid, 0.5);
  EXPECT_NEAR(std::abs(sym[0] - cplx(1.0)), 0.0, 1e-14);
  const RealField c = RealField::sample(grid, [](double, double) { return 2.0; });
  const RealField mc = mollify(c, 0.5);
  for (std::size_t i = 0; i < mc.size(); ++i) EXPECT_NEAR(mc[i], 2.0, 1e-13);
  const RealField f = RealField::sample(grid, [](double x, double y) { return std::sin(x) * std::cos(y); });
  const double e1 = l2_norm(mollify(f, 0.8) - f);
  const double e2 = l2_norm(mollify(f, 0.4) - f);
  EXPECT_GT(e1, e2);
  EXPECT_LT(e2, 0.1 * l2_norm(f));
  EXPECT_THROW(mollifier_symbol(grid, 0.0), UsageError);
}

TEST(Mollifier, WarnsBelowGridSpacing) {
  auto grid = make_grid(16, 16, 16.0, 16.0);
  int warnings = 0;
  const auto prev = set_warning_handler([&](std::string_view) { ++warnings; });
  mollify(RealField::sample(grid, [](double x, double) { return x; }), 0.5);
  set_warning_handler(prev);
  EXPECT_EQ(warnings, 1);
}

}  // namespace
}  // namespace zsl
