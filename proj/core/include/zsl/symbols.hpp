#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace zsl {

// Pointwise symbol inequalities behind the linear Bourgain-space estimates,
// checked by brute force. Notation: xi = (xi1, xi2), eta = (xi1 - xi1', xi2),
// <a> = (1 + a^2)^{1/2}.

/// Closed interval of one scan axis.
struct Range {
  double lo = -20.0;
  double hi = 20.0;
};

struct ScanConfig {
  /// Axes in the order xi1, xi2, xi1', tau.
  std::array<Range, 4> ranges{};
  /// Grid points per axis for the coarse pass.
  int points = 64;
  /// Number of local refinements around the running argmax.
  int refinements = 2;
  /// Sign s_w in <tau + s_w |.|> (wave symbols).
  int wave_sign = 1;
  /// Sign s_s in <tau + s_s |.|^2> (Schrodinger symbols).
  int schrodinger_sign = 1;
  /// Points per axis for the three-dimensional symbol3 check.
  int points_3d = 128;
  /// Monte Carlo samples per nu for the z-inequality.
  long samples = 1'000'000;
  std::vector<double> nus{1.5, 2.0, 4.0};
  std::uint64_t seed = 20240607;
  int threads = 1;

  /// Throws UsageError naming the offending field.
  void validate() const;
};

struct ScanReport {
  std::string id;
  /// Largest ratio found (the empirical constant C).
  double constant = 0.0;
  /// Argmax: (xi1, xi2, xi1', tau) for the symbol scans, (y1, y2, nu, 0)
  /// for the z-inequality.
  std::array<double, 4> witness{};
  /// C after the coarse pass and after each refinement.
  std::vector<double> history;
  long points = 0;
  long violations = 0;
  /// Relative change of C over the last refinement, |C_R - C_{R-1}| / C_{R-1}.
  double spread = 0.0;
  bool passed = false;
};

double bracket(double a);

/// <xi>^2 / (<tau + s_w |eta|> + <tau + s_s |xi|^2> + <xi1'>)
double symbol1_ratio(double xi1, double xi2, double xi1p, double tau, int wave_sign,
                     int schrodinger_sign);
/// <xi>^2 / (<tau + s_w |xi|> + <tau + s_s |eta|^2> + <xi1'>^2)
double symbol2_ratio(double xi1, double xi2, double xi1p, double tau, int wave_sign,
                     int schrodinger_sign);
/// <xi> / (<xi1'> <eta>); bounded by sqrt(2).
double symbol3_ratio(double xi1, double xi2, double xi1p);

/// Right side of |z| <= nu|y2| + nu/(nu-1) |y1| chi(|z| >= nu|y2|)
///                      chi(nu/(nu+1) <= |z|/|y1| <= nu/(nu-1)),  z = y1 - y2.
double z_inequality_rhs(double y1, double y2, double nu);

/// 1/2 (|xi|^2 - 3/2 |xi|) <= |tau + |xi|^2| <= 3/2 (|xi|^2 + 3/2 |xi|)
bool in_region_b(double xi1, double xi2, double tau);
/// <xi>^2 / (<xi1'> + 2 <tau + s_w |eta|> + 2 <tau + |xi|^2> chi(B)).
/// Only meaningful for |xi| >= 2 |xi1'|.
double symbol5_ratio(double xi1, double xi2, double xi1p, double tau, int wave_sign);

ScanReport scan_symbol1(const ScanConfig& cfg);
ScanReport scan_symbol2(const ScanConfig& cfg);
/// Passes iff no grid point exceeds sqrt(2) (with 1e-12 slack).
ScanReport check_symbol3(const ScanConfig& cfg);
/// Passes iff no sample violates the inequality (relative slack 1e-12).
ScanReport check_z_inequality(const ScanConfig& cfg);
/// Scan of symbol5 restricted to |xi| >= 2 |xi1'|.
ScanReport check_b_region(const ScanConfig& cfg);

/// Tolerance on the last refinement change for a scan to count as stable.
inline constexpr double kStableSpread = 0.05;

/// {"id", "C", "witness", "history", ...} as a JSON document.
std::string to_json(const ScanReport& r);

}  // namespace zsl
