#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zsl/diagnostics.hpp"
#include "zsl/errors.hpp"
#include "zsl/initial_data.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

Background background() { return Background(make_grid(32, 16, 20.0, 10.0)); }

TEST(InitialData, ProfileNamesRoundTrip) {
  for (Profile p : {Profile::zero, Profile::gaussian, Profile::mode, Profile::prepared_gaussian}) {
    EXPECT_EQ(profile_from_string(to_string(p)), p);
  }
  try {
    profile_from_string("sech");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("prepared-gaussian"), std::string::npos);
  }
}

TEST(InitialData, RejectsBadWidth) {
  InitialSpec s;
  s.width = 0.0;
  EXPECT_THROW(s.validate(), UsageError);
  s.width = 1.0;
  s.amplitude = std::nan("");
  EXPECT_THROW(s.validate(), UsageError);
}

TEST(InitialData, ZeroProfile) {
  const Background bg = background();
  const ZakharovState s = make_initial({}, bg);
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    EXPECT_EQ(s.u[i], cplx(0.0));
    EXPECT_EQ(s.n[i], 0.0);
    EXPECT_EQ(s.v.x[i], 0.0);
  }
}

TEST(InitialData, GaussianValues) {
  const Background bg = background();
  InitialSpec spec;
  spec.profile = Profile::gaussian;
  spec.amplitude = 0.3;
  spec.width = 1.5;
  spec.center[0] = 1.25;
  spec.center[1] = -0.625;
  const ZakharovState s = make_initial(spec, bg);
  const auto& g = bg.grid();
  for (int ix = 0; ix < g.nx(); ix += 5) {
    for (int iy = 0; iy < g.ny(); iy += 3) {
      const double dx = g.x(ix) - 1.25, dy = g.y(iy) + 0.625;
      const cplx u = s.u[g.index(ix, iy)];
      EXPECT_NEAR(u.real(), 0.3 * std::exp(-(dx * dx + dy * dy) / 2.25), 1e-15);
      EXPECT_EQ(u.imag(), 0.0);
      EXPECT_EQ(s.n[g.index(ix, iy)], 0.0);
    }
  }
}

TEST(InitialData, ModeIsPeriodic) {
  const Background bg = background();
  InitialSpec spec;
  spec.profile = Profile::mode;
  spec.amplitude = 0.2;
  spec.k[0] = 2;
  spec.k[1] = -1;
  const ZakharovState s = make_initial(spec, bg);
  const auto& g = bg.grid();
  const double kx = 2.0 * std::numbers::pi * 2 / 20.0, ky = -2.0 * std::numbers::pi / 10.0;
  for (std::size_t i = 0; i < s.u.size(); ++i) EXPECT_NEAR(std::abs(s.u[i]), 0.2, 1e-15);
  const cplx u = s.u[g.index(3, 7)];
  EXPECT_NEAR(std::arg(u / std::polar(1.0, kx * g.x(3) + ky * g.y(7))), 0.0, 1e-12);
}

TEST(InitialData, PreparedGaussianSatisfiesConstraint) {
  const Background bg = background();
  InitialSpec spec;
  spec.profile = Profile::prepared_gaussian;
  spec.amplitude = 0.4;
  const ZakharovState s = make_initial(spec, bg);
  EXPECT_LT(constraint_error(s, bg), 1e-14);
  EXPECT_GT(l2_norm(s.n), 0.1);
  EXPECT_EQ(l2_norm(s.v.x) + l2_norm(s.v.y), 0.0);
}

}  // namespace
}  // namespace zsl
