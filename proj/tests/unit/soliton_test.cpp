#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "zsl/log.hpp"
#include "zsl/soliton.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

// Collects warnings for the lifetime of the object.
struct WarningCapture {
  std::vector<std::string> messages;
  WarningHandler previous;
  WarningCapture() {
    previous = set_warning_handler([this](std::string_view m) { messages.emplace_back(m); });
  }
  ~WarningCapture() { set_warning_handler(previous); }
};

// max |Q'' - Q + Q^3| with Q'' from a direct cosine-sum evaluation of the
// trigonometric interpolant, independent of the FFT code.
double direct_ode_residual(int n, double lx) {
  const double dx = lx / n;
  std::vector<double> q(n), qxx(n, 0.0);
  for (int i = 0; i < n; ++i) q[i] = 2.0 * std::sqrt(2.0) / (2.0 * std::cosh((i - n / 2) * dx));
  for (int m = -n / 2; m < n / 2; ++m) {
    const double k = 2.0 * std::numbers::pi * m / lx;
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
      re += q[j] * std::cos(2.0 * std::numbers::pi * m * j / n);
      im -= q[j] * std::sin(2.0 * std::numbers::pi * m * j / n);
    }
    for (int i = 0; i < n; ++i) {
      const double a = 2.0 * std::numbers::pi * m * i / n;
      qxx[i] += -k * k * (re * std::cos(a) - im * std::sin(a)) / n;
    }
  }
  double r = 0.0;
  for (int i = 0; i < n; ++i) r = std::max(r, std::abs(qxx[i] - q[i] + q[i] * q[i] * q[i]));
  return r;
}

TEST(Soliton, ClosedFormValues) {
  EXPECT_NEAR(eval_q(0.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(eval_q(1.0), 2.0 * std::sqrt(2.0) / (std::exp(1.0) + std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(eval_q(1.0), 0.9164871, 1e-7);
  EXPECT_LT(eval_q(40.0), 1e-16);
  EXPECT_TRUE(std::isfinite(eval_q(1000.0)));
  EXPECT_EQ(eval_q(1000.0), 0.0);
  EXPECT_EQ(eval_q(-2.5), eval_q(2.5));
  EXPECT_NEAR(eval_q_prime(0.7), -eval_q(0.7) * std::tanh(0.7), 1e-15);
}

TEST(Soliton, BackgroundIsEvenAndPositive) {
  auto g = make_grid(64, 8, 40.0, 10.0);
  Background bg(g);
  for (int ix = 1; ix < 64; ++ix) {
    for (int iy = 0; iy < 8; ++iy) {
      EXPECT_EQ(bg.q().at(ix, iy), bg.q().at(64 - ix, iy));
      EXPECT_GT(bg.q().at(ix, iy), 0.0);
    }
  }
  EXPECT_NEAR(max_abs(bg.q()), std::sqrt(2.0), 1e-15);
}

TEST(Soliton, ComponentsFollowThePhase) {
  auto g = make_grid(32, 8, 40.0, 10.0);
  Background bg(g);
  const double t = 0.8;
  BackgroundComponents c = bg.components(t);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double q = bg.q()[i], dq = bg.dq()[i];
    EXPECT_NEAR(c.f_r[i], std::sqrt(2.0) * std::cos(t) * q, 1e-15);
    EXPECT_NEAR(c.g_r[i], std::sqrt(2.0) * std::sin(t) * q, 1e-15);
    EXPECT_NEAR(c.h_r.x[i], std::sqrt(2.0) * std::cos(t) * dq, 1e-15);
    EXPECT_NEAR(c.l_r.x[i], std::sqrt(2.0) * std::sin(t) * dq, 1e-15);
    EXPECT_EQ(c.h_r.y[i], 0.0);
    EXPECT_EQ(c.p_r[i], 0.0);
    EXPECT_EQ(c.v_r.x[i], 0.0);
  }
}

TEST(Soliton, OdeResidualMatchesDirectEvaluation) {
  for (double lx : {40.0, 50.0}) {
    WarningCapture w;
    const OdeCheck c = ode_residual(make_grid(256, 8, lx, 10.0));
    EXPECT_NEAR(c.residual, direct_ode_residual(256, lx), 1e-11) << "lx = " << lx;
  }
}

TEST(Soliton, OdeResidualSmallWhenBoxHoldsTheSoliton) {
  WarningCapture w;
  const OdeCheck c = ode_residual(make_grid(384, 8, 60.0, 10.0));
  EXPECT_LT(c.residual, 1e-8);
  EXPECT_FALSE(c.boundary_warning);
  EXPECT_TRUE(w.messages.empty());
}

TEST(Soliton, SmallBoxWarns) {
  WarningCapture w;
  const OdeCheck c = ode_residual(make_grid(64, 8, 10.0, 10.0));
  EXPECT_TRUE(c.boundary_warning);
  EXPECT_NEAR(c.boundary_value, eval_q(5.0), 1e-16);
  ASSERT_EQ(w.messages.size(), 1u);
}

}  // namespace
}  // namespace zsl
