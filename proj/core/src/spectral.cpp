#include "zsl/spectral.hpp"

#include <algorithm>
#include <cstdlib>

namespace zsl {
namespace {

ComplexField spectral_copy(const ComplexField& f) {
  return f.repr() == Repr::spectral ? f : to_spectral(f);
}

double parseval_weight(const Grid2D& g) {
  const double n = static_cast<double>(g.size());
  return g.area() / (n * n);
}

}  // namespace

ComplexField to_spectral(const RealField& f) {
  std::vector<cplx> data(f.values().begin(), f.values().end());
  f.grid().forward(data.data());
  return ComplexField(f.grid_ptr(), Repr::spectral, std::move(data));
}

ComplexField to_spectral(const ComplexField& f) {
  if (f.repr() != Repr::physical) throw UsageError("to_spectral: field is already spectral");
  ComplexField out(f.grid_ptr(), Repr::spectral,
                   std::vector<cplx>(f.values().begin(), f.values().end()));
  out.grid().forward(out.values().data());
  return out;
}

ComplexField to_physical(const ComplexField& f) {
  if (f.repr() != Repr::spectral) throw UsageError("to_physical: field is already physical");
  ComplexField out(f.grid_ptr(), Repr::physical,
                   std::vector<cplx>(f.values().begin(), f.values().end()));
  out.grid().inverse(out.values().data());
  return out;
}

RealField to_physical_real(const ComplexField& f) { return real_part(to_physical(f)); }

ComplexField laplacian(const ComplexField& f) {
  return apply_multiplier(f, [](double kx, double ky) { return -(kx * kx + ky * ky); });
}

ComplexField omega(const ComplexField& f) {
  return apply_multiplier(f, [](double kx, double ky) { return std::sqrt(kx * kx + ky * ky); });
}

ComplexField inv_omega(const ComplexField& f) {
  return apply_multiplier(f, [](double kx, double ky) {
    const double k = std::sqrt(kx * kx + ky * ky);
    return k > 0.0 ? 1.0 / k : 0.0;
  });
}

std::array<ComplexField, 2> grad(const ComplexField& f) {
  ComplexField base = spectral_copy(f);
  std::array<ComplexField, 2> out{base, base};
  const auto& g = base.grid();
  const auto& kx = g.kx_deriv();
  const auto& ky = g.ky_deriv();
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      const cplx v = base.at(ix, iy);
      out[0].at(ix, iy) = cplx(0.0, kx[ix]) * v;
      out[1].at(ix, iy) = cplx(0.0, ky[iy]) * v;
    }
  }
  return out;
}

ComplexField div(const ComplexField& fx, const ComplexField& fy) {
  ComplexField ax = spectral_copy(fx);
  const ComplexField ay = spectral_copy(fy);
  require_same_grid(ax.grid(), ay.grid());
  const auto& g = ax.grid();
  const auto& kx = g.kx_deriv();
  const auto& ky = g.ky_deriv();
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      ax.at(ix, iy) = cplx(0.0, kx[ix]) * ax.at(ix, iy) + cplx(0.0, ky[iy]) * ay.at(ix, iy);
    }
  }
  return ax;
}

std::array<ComplexField, 2> inv_lap_grad(const ComplexField& f) {
  ComplexField base = spectral_copy(f);
  std::array<ComplexField, 2> out{base, base};
  const auto& g = base.grid();
  const auto& kx = g.kx_deriv();
  const auto& ky = g.ky_deriv();
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      const cplx v = base.at(ix, iy);
      if (k2 > 0.0) {
        out[0].at(ix, iy) = cplx(0.0, -kx[ix] / k2) * v;
        out[1].at(ix, iy) = cplx(0.0, -ky[iy] / k2) * v;
      } else {
        out[0].at(ix, iy) = 0.0;
        out[1].at(ix, iy) = 0.0;
      }
    }
  }
  return out;
}

RealField laplacian(const RealField& f) { return to_physical_real(laplacian(to_spectral(f))); }

RealVectorField gradient(const RealField& f) {
  auto g = grad(to_spectral(f));
  return {to_physical_real(g[0]), to_physical_real(g[1])};
}

RealField divergence(const RealVectorField& v) {
  return to_physical_real(div(to_spectral(v.x), to_spectral(v.y)));
}

RealVectorField inv_lap_grad(const RealField& f) {
  auto g = inv_lap_grad(to_spectral(f));
  return {to_physical_real(g[0]), to_physical_real(g[1])};
}

void dealias_in_place(ComplexField& f) {
  if (f.repr() != Repr::spectral) throw UsageError("dealias expects a spectral field");
  const auto& g = f.grid();
  // |m| > n/3  <=>  3|m| > n, kept in integers to avoid rounding at the edge.
  for (int ix = 0; ix < g.nx(); ++ix) {
    const bool cut_x = 3 * std::abs(g.mode_x(ix)) > g.nx();
    for (int iy = 0; iy < g.ny(); ++iy) {
      if (cut_x || 3 * std::abs(g.mode_y(iy)) > g.ny()) f.at(ix, iy) = 0.0;
    }
  }
}

ComplexField dealias(const ComplexField& f) {
  ComplexField out = f;
  dealias_in_place(out);
  return out;
}

double sobolev_norm(const ComplexField& f, SobolevIndex s) {
  const ComplexField spec = spectral_copy(f);
  const auto& g = spec.grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  double sum = 0.0;
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double bracket2 = 1.0 + kx[ix] * kx[ix] + ky[iy] * ky[iy];
      sum += std::pow(bracket2, s.value()) * std::norm(spec.at(ix, iy));
    }
  }
  return std::sqrt(sum * parseval_weight(g));
}

double sobolev_norm(const RealField& f, SobolevIndex s) {
  return sobolev_norm(to_spectral(f), s);
}

double integrate(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_area();
}

double mean(const RealField& f) { return integrate(f) / f.grid().area(); }

double l2_norm(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v * v;
  return std::sqrt(sum * f.grid().cell_area());
}

double l2_norm(const ComplexField& f) {
  double sum = 0.0;
  for (const cplx& v : f.values()) sum += std::norm(v);
  const double w = f.repr() == Repr::physical ? f.grid().cell_area() : parseval_weight(f.grid());
  return std::sqrt(sum * w);
}

double l2_norm(const RealVectorField& v) {
  const double a = l2_norm(v.x);
  const double b = l2_norm(v.y);
  return std::sqrt(a * a + b * b);
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace zsl
