#pragma once

#include <array>
#include <cmath>

#include "zsl/errors.hpp"
#include "zsl/field.hpp"

namespace zsl {

// Normalization: forward transforms are unnormalized, inverse transforms
// carry 1/(nx ny). With N = nx ny and A the box area, the discrete Parseval
// identity reads
//   sum_x |f(x)|^2 dA  =  (A / N^2) sum_k |f^(k)|^2.

ComplexField to_spectral(const RealField& f);
/// Throws UsageError if `f` is already spectral.
ComplexField to_spectral(const ComplexField& f);
/// Throws UsageError if `f` is already physical.
ComplexField to_physical(const ComplexField& f);
/// Inverse transform keeping only the real part.
RealField to_physical_real(const ComplexField& f);

/// Scales every mode by sym(kx, ky), evaluated at the full wavenumbers.
/// Physical input is transformed first; the result is spectral.
template <class Symbol>
ComplexField apply_multiplier(const ComplexField& f, Symbol&& sym) {
  ComplexField out = f.repr() == Repr::spectral ? f : to_spectral(f);
  const auto& g = out.grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      out.at(ix, iy) *= cplx(sym(kx[ix], ky[iy]));
    }
  }
  return out;
}

// Named multipliers. All accept physical or spectral input and return
// spectral fields. Odd-order multipliers use the Nyquist-free wavenumbers.

/// -|k|^2
ComplexField laplacian(const ComplexField& f);
/// |k|, the operator (-Laplacian)^{1/2}
ComplexField omega(const ComplexField& f);
/// 1/|k| with the zero mode mapped to zero
ComplexField inv_omega(const ComplexField& f);
/// i k
std::array<ComplexField, 2> grad(const ComplexField& f);
/// i k . (fx, fy)
ComplexField div(const ComplexField& fx, const ComplexField& fy);
/// -i k / |k|^2 with zero modes mapped to zero (the operator Laplacian^{-1} grad)
std::array<ComplexField, 2> inv_lap_grad(const ComplexField& f);

// Physical-in, physical-out conveniences for real fields.
RealField laplacian(const RealField& f);
RealVectorField gradient(const RealField& f);
RealField divergence(const RealVectorField& v);
RealVectorField inv_lap_grad(const RealField& f);

/// 2/3-rule truncation: zeroes every mode with |m_x| > nx/3 or |m_y| > ny/3.
ComplexField dealias(const ComplexField& spectral);
void dealias_in_place(ComplexField& spectral);

/// Regularity exponent of a discrete Sobolev norm.
class SobolevIndex {
 public:
  explicit SobolevIndex(double s) : s_(s) {
    if (!std::isfinite(s)) throw UsageError("Sobolev index must be finite");
  }
  double value() const noexcept { return s_; }

 private:
  double s_;
};

/// (sum_k <k>^{2s} |f^(k)|^2 A / N^2)^{1/2} with <k> = (1 + |k|^2)^{1/2}.
double sobolev_norm(const ComplexField& f, SobolevIndex s);
double sobolev_norm(const RealField& f, SobolevIndex s);

/// Riemann sum of f over the box.
double integrate(const RealField& f);
double mean(const RealField& f);
double l2_norm(const RealField& f);
/// Physical fields use the cell-weighted sum, spectral ones the Parseval weight.
double l2_norm(const ComplexField& f);
double l2_norm(const RealVectorField& v);
double max_abs(const RealField& f);
double max_abs(const ComplexField& f);

}  // namespace zsl
