#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zsl/errors.hpp"
#include "zsl/grid.hpp"

namespace zsl {
namespace {

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(make_grid(7, 8, 1.0, 1.0), UsageError);
  EXPECT_THROW(make_grid(6, 8, 1.0, 1.0), UsageError);
  EXPECT_THROW(make_grid(8, 8, 0.0, 1.0), UsageError);
  EXPECT_THROW(make_grid(8, 8, 1.0, std::nan("")), UsageError);
}

TEST(Grid, CoordinatesAreMirrored) {
  auto g = make_grid(16, 8, 40.0, 10.0);
  EXPECT_DOUBLE_EQ(g->dx(), 2.5);
  EXPECT_DOUBLE_EQ(g->x(0), -20.0);
  EXPECT_DOUBLE_EQ(g->x(8), 0.0);
  for (int i = 1; i < 16; ++i) EXPECT_EQ(g->x(i), -g->x(16 - i));
}

TEST(Grid, ModeTables) {
  auto g = make_grid(8, 8, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  const double expect[] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(g->mode_x(i), expect[i]);
    EXPECT_NEAR(g->kx()[i], expect[i], 1e-14);
  }
  EXPECT_TRUE(g->nyquist_x(4));
  EXPECT_EQ(g->kx_deriv()[4], 0.0);
  EXPECT_NEAR(g->k_max(), std::hypot(4.0, 4.0), 1e-14);
}

TEST(Grid, TransformRoundTrip) {
  auto g = make_grid(8, 12, 3.0, 5.0);
  std::vector<cplx> a(g->size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = cplx(std::sin(1.0 + i), std::cos(3.0 * i));
  auto b = a;
  g->forward(b.data());
  g->inverse(b.data());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-14);
}

// Direct O(N^2) DFT as the reference for the transform convention.
TEST(Grid, ForwardMatchesDirectSum) {
  auto g = make_grid(8, 8, 1.0, 1.0);
  std::vector<cplx> a(g->size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = cplx(std::cos(0.7 * i), 0.1 * i);
  auto b = a;
  g->forward(b.data());
  for (int kx = 0; kx < 8; ++kx) {
    for (int ky = 0; ky < 8; ++ky) {
      cplx s = 0.0;
      for (int ix = 0; ix < 8; ++ix) {
        for (int iy = 0; iy < 8; ++iy) {
          s += a[g->index(ix, iy)] * std::polar(1.0, -2.0 * std::numbers::pi * (kx * ix + ky * iy) / 8.0);
        }
      }
      EXPECT_NEAR(std::abs(s - b[g->index(kx, ky)]), 0.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace zsl
