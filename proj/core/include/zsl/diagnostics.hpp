#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zsl/solver.hpp"

namespace zsl {

/// Conserved energy of the perturbation system,
///   E = integral |grad u|^2 + |u|^2 + n^2/2 + lambda^2 |v|^2 / 2
///                - Q^2 |u|^2 + n (|u|^2 + 2 Q Re u).
/// The gradient term is summed in Fourier space with the same |k|^2 as the
/// Laplacian used by the integrators.
double energy(const ZakharovState& s, const Background& bg, double lambda);

/// || n + |u|^2 + 2 Q Re u ||_2, which vanishes in the subsonic limit.
double constraint_error(const ZakharovState& s, const Background& bg);

struct DiagnosticsConfig {
  /// Sobolev orders k at which ||u||_{H^k} is reported.
  std::vector<double> u_orders{0.0, 1.0};
  /// n is reported in H^l and n_t in H^{l-1}.
  double n_order = 0.0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  std::vector<double> u_norms;
  double n_norm = 0.0;
  double nt_norm = 0.0;
  double v_l2 = 0.0;
  /// Size of the perturbation, sqrt(||u||^2 + ||n||^2 + ||v||^2) in L2.
  /// Zero for an unperturbed soliton.
  double perturbation = 0.0;
  double constraint = 0.0;
};

DiagnosticsRecord record(const ZakharovState& s, const Background& bg, double lambda,
                         const DiagnosticsConfig& cfg = {});

/// %.17g-style text of v (enough to round-trip a double), independent of
/// the global locale.
std::string format_double(double v);

std::vector<std::string> csv_header(const DiagnosticsConfig& cfg);
void write_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& series,
               const DiagnosticsConfig& cfg);

/// Largest |E(t) - E(0)| / max(1, |E(0)|) over a series.
double max_relative_drift(const std::vector<DiagnosticsRecord>& series);

}  // namespace zsl
