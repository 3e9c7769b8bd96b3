#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "zsl/diagnostics.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

constexpr double kPi = std::numbers::pi;

// Wide box so that the integrals of Q and Q^2 over x equal their full-line
// values sqrt(2) pi and 4 to rounding.
std::shared_ptr<const Background> wide() {
  return std::make_shared<const Background>(make_grid(256, 16, 80.0, 8.0));
}

TEST(Energy, PlaneWaveAgainstClosedForm) {
  auto bg = wide();
  const auto& g = bg->grid();
  const double a = 0.3, kx = 2.0 * kPi * 3 / g.lx(), ky = 2.0 * kPi / g.ly();
  ZakharovState s = ZakharovState::zero(bg->grid_ptr());
  s.u = ComplexField::sample(bg->grid_ptr(), [&](double x, double y) { return a * std::polar(1.0, kx * x + ky * y); });
  // |grad u|^2 + |u|^2 - Q^2 |u|^2 with n = v = 0
  const double ref = a * a * ((kx * kx + ky * ky + 1.0) * g.area() - 4.0 * g.ly());
  EXPECT_NEAR(energy(s, *bg, 1.0), ref, 1e-10 * std::abs(ref));
}

TEST(Energy, DensityAndVelocityTerms) {
  auto bg = wide();
  const auto& g = bg->grid();
  ZakharovState s = ZakharovState::zero(bg->grid_ptr());
  const double kx = 2.0 * kPi / g.lx();
  s.n = RealField::sample(bg->grid_ptr(), [&](double x, double) { return 0.5 * std::cos(kx * x); });
  s.v.y = RealField::sample(bg->grid_ptr(), [&](double x, double) { return 2.0 * std::sin(kx * x); });
  const double lambda = 3.0;
  // n^2 / 2 + lambda^2 |v|^2 / 2, each averaging to half its amplitude squared
  const double ref = 0.5 * 0.125 * g.area() + 0.5 * lambda * lambda * 2.0 * g.area();
  EXPECT_NEAR(energy(s, *bg, lambda), ref, 1e-10 * std::abs(ref));
}

TEST(Energy, CouplingTerm) {
  auto bg = wide();
  ZakharovState s = ZakharovState::zero(bg->grid_ptr());
  s.u = ComplexField(RealField::sample(bg->grid_ptr(), [](double, double) { return 0.1; }));
  s.n = RealField::sample(bg->grid_ptr(), [](double, double) { return 0.2; });
  const auto& g = bg->grid();
  // |u|^2 (1 - Q^2) + n^2/2 + n (|u|^2 + 2 Q u)
  const double q2 = 4.0 * g.ly();
  const double q1 = std::sqrt(2.0) * kPi * g.ly();
  const double ref = 0.01 * g.area() - 0.01 * q2 + 0.02 * g.area() +
                     0.2 * (0.01 * g.area() + 0.2 * q1);
  EXPECT_NEAR(energy(s, *bg, 1.0), ref, 1e-10 * std::abs(ref));
}

TEST(Constraint, Examples) {
  auto bg = wide();
  ZakharovState s = ZakharovState::zero(bg->grid_ptr());
  s.n = RealField::sample(bg->grid_ptr(), [](double x, double) { return std::exp(-x * x); });
  EXPECT_NEAR(constraint_error(s, *bg), l2_norm(s.n), 1e-15);
  s.u = ComplexField::sample(bg->grid_ptr(), [](double x, double y) { return cplx(0.1 * std::exp(-x * x - y * y), 0.05); });
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    s.n[i] = -std::norm(s.u[i]) - 2.0 * bg->q()[i] * s.u[i].real();
  }
  EXPECT_LT(constraint_error(s, *bg), 1e-12);
}

TEST(Record, NormsOfZeroState) {
  auto bg = wide();
  const DiagnosticsRecord r = record(ZakharovState::zero(bg->grid_ptr(), 0.5), *bg, 1.0);
  EXPECT_EQ(r.t, 0.5);
  EXPECT_EQ(r.energy, 0.0);
  ASSERT_EQ(r.u_norms.size(), 2u);
  EXPECT_EQ(r.u_norms[0], 0.0);
  EXPECT_EQ(r.perturbation, 0.0);
  EXPECT_EQ(r.constraint, 0.0);
}

TEST(Csv, HeaderAndRoundTrip) {
  DiagnosticsConfig cfg;
  cfg.u_orders = {0.0, 1.0, 2.0};
  const auto header = csv_header(cfg);
  ASSERT_EQ(header.size(), 10u);
  EXPECT_EQ(header[0], "t");
  EXPECT_EQ(header[4], "u_H2");

  DiagnosticsRecord r;
  r.t = 0.1;
  r.energy = 1.0 / 3.0;
  r.u_norms = {1e-300, 2.5, 0.0};
  std::ostringstream os;
  write_csv(os, {r}, cfg);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  EXPECT_EQ(std::stod(line.substr(0, line.find(','))), 0.1);
  for (double v : {1.0 / 3.0, 1e-300, -2.5e17, 0.1}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(Drift, RelativeToInitialEnergy) {
  std::vector<DiagnosticsRecord> s(3);
  s[0].energy = 4.0;
  s[1].energy = 4.2;
  s[2].energy = 3.6;
  EXPECT_NEAR(max_relative_drift(s), 0.1, 1e-15);
  s[0].energy = 0.0;
  s[1].energy = 0.5;
  s[2].energy = 0.0;
  EXPECT_NEAR(max_relative_drift(s), 0.5, 1e-15);
}

}  // namespace
}  // namespace zsl
