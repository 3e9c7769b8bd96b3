#include "zsl/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "zsl/spectral.hpp"

namespace zsl {

double energy(const ZakharovState& s, const Background& bg, double lambda) {
  const ComplexField uh = to_spectral(s.u);
  const auto& g = s.grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  double grad2 = 0.0;
  for (int ix = 0; ix < g.nx(); ++ix) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      grad2 += (kx[ix] * kx[ix] + ky[iy] * ky[iy]) * std::norm(uh.at(ix, iy));
    }
  }
  const double n2 = static_cast<double>(g.size());
  grad2 *= g.area() / (n2 * n2);

  const auto& q = bg.q();
  const auto& q2 = bg.q2();
  const double lam2 = lambda * lambda;
  double sum = 0.0;
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    const double u2 = std::norm(s.u[i]);
    const double n = s.n[i];
    const double v2 = s.v.x[i] * s.v.x[i] + s.v.y[i] * s.v.y[i];
    sum += u2 + 0.5 * n * n + 0.5 * lam2 * v2 - q2[i] * u2 +
           n * (u2 + 2.0 * q[i] * s.u[i].real());
  }
  return grad2 + sum * g.cell_area();
}

double constraint_error(const ZakharovState& s, const Background& bg) {
  RealField r = s.n;
  const auto& q = bg.q();
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] += std::norm(s.u[i]) + 2.0 * q[i] * s.u[i].real();
  }
  return l2_norm(r);
}

DiagnosticsRecord record(const ZakharovState& s, const Background& bg, double lambda,
                         const DiagnosticsConfig& cfg) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.energy = energy(s, bg, lambda);
  const ComplexField uh = to_spectral(s.u);
  for (double k : cfg.u_orders) r.u_norms.push_back(sobolev_norm(uh, SobolevIndex(k)));
  r.n_norm = sobolev_norm(s.n, SobolevIndex(cfg.n_order));
  r.nt_norm = sobolev_norm(n_dot(s, lambda), SobolevIndex(cfg.n_order - 1.0));
  r.v_l2 = l2_norm(s.v);
  const double a = l2_norm(s.u);
  r.perturbation = std::sqrt(a * a + r.v_l2 * r.v_l2 + std::pow(l2_norm(s.n), 2));
  r.constraint = constraint_error(s, bg);
  return r;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::vector<std::string> csv_header(const DiagnosticsConfig& cfg) {
  std::vector<std::string> cols{"t", "energy"};
  for (double k : cfg.u_orders) cols.push_back("u_H" + format_double(k));
  cols.push_back("n_H" + format_double(cfg.n_order));
  cols.push_back("nt_H" + format_double(cfg.n_order - 1.0));
  cols.insert(cols.end(), {"v_L2", "perturbation", "constraint"});
  return cols;
}

void write_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& series,
               const DiagnosticsConfig& cfg) {
  const auto header = csv_header(cfg);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : series) {
    os << format_double(r.t) << ',' << format_double(r.energy);
    for (double x : r.u_norms) os << ',' << format_double(x);
    os << ',' << format_double(r.n_norm) << ',' << format_double(r.nt_norm) << ','
       << format_double(r.v_l2) << ',' << format_double(r.perturbation) << ','
       << format_double(r.constraint) << '\n';
  }
}

double max_relative_drift(const std::vector<DiagnosticsRecord>& series) {
  if (series.empty()) return 0.0;
  const double e0 = series.front().energy;
  const double scale = std::max(1.0, std::abs(e0));
  double drift = 0.0;
  for (const auto& r : series) drift = std::max(drift, std::abs(r.energy - e0) / scale);
  return drift;
}

}  // namespace zsl
