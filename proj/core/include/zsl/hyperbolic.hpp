#pragma once

#include <Eigen/Core>
#include <array>

#include "zsl/field.hpp"
#include "zsl/solver.hpp"

namespace zsl {

// Symmetric hyperbolic form of the soliton-perturbed Zakharov system,
//   U_t + sum_j (A^j(U) + B^j(phi) + lambda C^j) U_{x_j} + (D1(U) + D2(phi)) U = K Laplacian U,
// for U = (P, V, F, G, H, L) in the frame where the background is
// phi = e^{it} Q. The perturbation u of that frame relates to the gauged
// unknown of ZakharovState by u = e^{it} u_gauged.

inline constexpr int kHyperbolicComponents = 9;

/// Component indices of U.
namespace hc {
enum : int { P = 0, V1, V2, F, G, H1, H2, L1, L2 };
}

using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat9 = Eigen::Matrix<double, 9, 9>;

struct HyperbolicState {
  double t = 0.0;
  std::array<RealField, kHyperbolicComponents> c;

  static HyperbolicState zero(const GridPtr& grid, double t = 0.0);
  RealField& operator[](int i) noexcept { return c[static_cast<std::size_t>(i)]; }
  const RealField& operator[](int i) const noexcept { return c[static_cast<std::size_t>(i)]; }
  const Grid2D& grid() const noexcept { return c[0].grid(); }
  Vec9 node(std::size_t i) const;
  void set_node(std::size_t i, const Vec9& v);
};

/// sqrt(sum over components of ||U_c||_2^2)
double l2_norm(const HyperbolicState& u);

/// Background values at one grid node, including div H_r and div L_r.
struct NodeBackground {
  double f_r = 0.0;
  double g_r = 0.0;
  double p_r = 0.0;
  std::array<double, 2> h_r{};
  std::array<double, 2> l_r{};
  double div_h_r = 0.0;
  double div_l_r = 0.0;
};

/// Background components at time t with their divergences, sampled once.
class BackgroundFields {
 public:
  BackgroundFields(const Background& bg, double t);
  NodeBackground at(std::size_t i) const;

 private:
  BackgroundComponents comps_;
  RealField div_h_r_;
  RealField div_l_r_;
};

struct CoeffMatrices {
  Mat9 a1, a2, b1, b2, c1, c2, k, d1, d2;
};

/// A^j(U), j = 1, 2. Row and column P couple to (H_j, L_j) through -G, F.
Mat9 a_matrix(int j, const Vec9& u);
/// B^j(phi): A^j evaluated at the background values (F_r, G_r).
Mat9 b_matrix(int j, const NodeBackground& bg);
/// C^j couples P and V_j with unit entries.
Mat9 c_matrix(int j);
/// Antisymmetric dispersion matrix: F_t = -Lap G, G_t = Lap F, H_t = -Lap L, L_t = Lap H.
Mat9 k_matrix();
/// Full zeroth-order matrix D(U, phi) with D(U, phi) U equal to the
/// residual terms R_1..R_5. D2(phi) = D(0, phi) and D1(U) = D(U, phi) - D2(phi).
Mat9 d_matrix(const Vec9& u, const NodeBackground& bg);

CoeffMatrices matrices(const Vec9& u, const NodeBackground& bg);

/// Builds U from a state of the gauged perturbation system at time s.t:
///   P = n + |u|^2 + 2 Q Re u,  V = -lambda Lap^{-1} grad(div v),
///   F + iG = sqrt(2) e^{it} u,  H + iL = sqrt(2) grad(e^{it} u).
HyperbolicState build_u(const ZakharovState& s, const Background& bg, double lambda);

/// W = (grad F - H, grad G - L), returned as its L2 norm.
double w_constraint_norm(const HyperbolicState& u);

/// Pointwise residual of the matrix form given a time derivative u_t.
HyperbolicState matrix_residual(const HyperbolicState& u_t, const HyperbolicState& u,
                                const Background& bg, double lambda);
/// The same residual from the component equations written out term by term.
HyperbolicState direct_residual(const HyperbolicState& u_t, const HyperbolicState& u,
                                const Background& bg, double lambda);

/// L2 norm of the matrix-form residual with U_t from the central difference
/// of three snapshots spaced dt apart.
double system_residual(const HyperbolicState& prev, const HyperbolicState& cur,
                       const HyperbolicState& next, double dt, const Background& bg,
                       double lambda);

/// Fourier transform of the sampled unit-mass bump j_eps, j(X) ~ exp(-1/(1-|X|^2))
/// on |X| < 1, as a spectral multiplier. The zero mode equals 1.
ComplexField mollifier_symbol(const GridPtr& grid, double eps);
/// Periodic convolution with j_eps. Warns if eps < max(dx, dy).
RealField mollify(const RealField& f, double eps);

}  // namespace zsl
