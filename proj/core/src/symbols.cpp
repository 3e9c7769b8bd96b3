#include "zsl/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "zsl/errors.hpp"

namespace zsl {
namespace {

using Axes = std::array<std::vector<double>, 4>;
using Point = std::array<double, 4>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Half-width, in old grid cells, of the window searched around the argmax at
// each refinement.
constexpr int kRefineCells = 8;

// n points from lo to hi, written so that symmetric ranges give exactly
// mirrored values.
std::vector<double> axis(const Range& r, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double mid = 0.5 * (r.lo + r.hi);
  const double half = 0.5 * (r.hi - r.lo);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = mid + half * (2.0 * i - (n - 1)) / (n - 1);
  }
  return out;
}

struct Best {
  double value = kNegInf;
  Point at{};
  long points = 0;
  long violations = 0;
};

// Maximum of ratio over the tensor grid. NaN marks excluded points. The
// first axis is split into contiguous tiles; tiles are merged in order with
// a strict comparison, so the result does not depend on the thread count.
template <class Ratio>
Best scan_grid(const Axes& axes, Ratio&& ratio, double limit, int threads) {
  const std::size_t n0 = axes[0].size();
  const std::size_t tiles = std::clamp<std::size_t>(static_cast<std::size_t>(threads), 1, n0);
  std::vector<Best> partial(tiles);
  auto work = [&](std::size_t tile) {
    Best b;
    const std::size_t begin = n0 * tile / tiles;
    const std::size_t end = n0 * (tile + 1) / tiles;
    for (std::size_t i = begin; i < end; ++i) {
      for (double x1 : axes[1]) {
        for (double x2 : axes[2]) {
          for (double x3 : axes[3]) {
            const double r = ratio(axes[0][i], x1, x2, x3);
            if (std::isnan(r)) continue;
            ++b.points;
            if (r > limit) ++b.violations;
            if (r > b.value) {
              b.value = r;
              b.at = {axes[0][i], x1, x2, x3};
            }
          }
        }
      }
    }
    partial[tile] = b;
  };
  if (tiles == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < tiles; ++t) pool.emplace_back(work, t);
  }
  Best out;
  for (const auto& b : partial) {
    out.points += b.points;
    out.violations += b.violations;
    if (b.value > out.value) {
      out.value = b.value;
      out.at = b.at;
    }
  }
  return out;
}

double spacing(const Range& r, int n) { return (r.hi - r.lo) / (n - 1); }

// Coarse scan plus local refinements: each refinement halves the spacing on
// a window of +-kRefineCells old cells around the current argmax (clipped to
// the configured ranges). The argmax itself is always a grid point of the
// next window, so the history is nondecreasing.
template <class Ratio>
ScanReport refine_scan(const std::string& id, const ScanConfig& cfg, Ratio&& ratio) {
  Axes axes;
  Point h{};
  for (int k = 0; k < 4; ++k) {
    axes[k] = axis(cfg.ranges[k], cfg.points);
    h[k] = spacing(cfg.ranges[k], cfg.points);
  }
  const double inf = std::numeric_limits<double>::infinity();
  Best best = scan_grid(axes, ratio, inf, cfg.threads);
  ScanReport rep;
  rep.id = id;
  rep.history.push_back(best.value);
  rep.points = best.points;
  for (int level = 0; level < cfg.refinements; ++level) {
    for (int k = 0; k < 4; ++k) {
      h[k] *= 0.5;
      axes[k].clear();
      for (int j = -2 * kRefineCells; j <= 2 * kRefineCells; ++j) {
        const double x = best.at[k] + j * h[k];
        if (x >= cfg.ranges[k].lo && x <= cfg.ranges[k].hi) axes[k].push_back(x);
      }
    }
    const Best local = scan_grid(axes, ratio, inf, cfg.threads);
    rep.points += local.points;
    if (local.value > best.value) best = local;
    rep.history.push_back(best.value);
  }
  rep.constant = best.value;
  rep.witness = best.at;
  if (rep.history.size() >= 2) {
    const double prev = rep.history[rep.history.size() - 2];
    rep.spread = std::abs(rep.history.back() - prev) / prev;
  }
  rep.passed = std::isfinite(rep.constant) && rep.constant > 0.0 && rep.spread <= kStableSpread;
  return rep;
}

double norm2(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

void ScanConfig::validate() const {
  static const char* names[4] = {"xi1", "xi2", "xi1p", "tau"};
  for (int k = 0; k < 4; ++k) {
    const auto& r = ranges[static_cast<std::size_t>(k)];
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
      throw UsageError(std::string("scan.range.") + names[k] + " must be a finite interval lo < hi");
    }
  }
  if (points < 8) throw UsageError("scan.points must be >= 8, got " + std::to_string(points));
  if (points_3d < 8) {
    throw UsageError("scan.points_3d must be >= 8, got " + std::to_string(points_3d));
  }
  if (refinements < 0 || refinements > 8) {
    throw UsageError("scan.refinements must be in [0, 8], got " + std::to_string(refinements));
  }
  if (wave_sign != 1 && wave_sign != -1) throw UsageError("scan.wave_sign must be +1 or -1");
  if (schrodinger_sign != 1 && schrodinger_sign != -1) {
    throw UsageError("scan.schrodinger_sign must be +1 or -1");
  }
  if (samples < 1) throw UsageError("scan.samples must be >= 1");
  if (nus.empty()) throw UsageError("scan.nus must not be empty");
  for (double nu : nus) {
    if (!(nu > 1.0) || !std::isfinite(nu)) {
      throw UsageError("scan.nus entries must be > 1, got " + std::to_string(nu));
    }
  }
  if (threads < 1) throw UsageError("threads must be >= 1");
}

double bracket(double a) { return std::sqrt(1.0 + a * a); }

double symbol1_ratio(double xi1, double xi2, double xi1p, double tau, int wave_sign,
                     int schrodinger_sign) {
  const double xi2sq = xi1 * xi1 + xi2 * xi2;
  const double eta = norm2(xi1 - xi1p, xi2);
  const double den = bracket(tau + wave_sign * eta) +
                     bracket(tau + schrodinger_sign * xi2sq) + bracket(xi1p);
  return (1.0 + xi2sq) / den;
}

double symbol2_ratio(double xi1, double xi2, double xi1p, double tau, int wave_sign,
                     int schrodinger_sign) {
  const double xi2sq = xi1 * xi1 + xi2 * xi2;
  const double eta2 = (xi1 - xi1p) * (xi1 - xi1p) + xi2 * xi2;
  const double den = bracket(tau + wave_sign * std::sqrt(xi2sq)) +
                     bracket(tau + schrodinger_sign * eta2) + (1.0 + xi1p * xi1p);
  return (1.0 + xi2sq) / den;
}

double symbol3_ratio(double xi1, double xi2, double xi1p) {
  return bracket(norm2(xi1, xi2)) / (bracket(xi1p) * bracket(norm2(xi1 - xi1p, xi2)));
}

double z_inequality_rhs(double y1, double y2, double nu) {
  const double z = std::abs(y1 - y2);
  double rhs = nu * std::abs(y2);
  if (z >= nu * std::abs(y2) && y1 != 0.0) {
    const double q = z / std::abs(y1);
    if (q >= nu / (nu + 1.0) && q <= nu / (nu - 1.0)) rhs += nu / (nu - 1.0) * std::abs(y1);
  }
  return rhs;
}

bool in_region_b(double xi1, double xi2, double tau) {
  const double m = norm2(xi1, xi2);
  const double a = std::abs(tau + m * m);
  return 0.5 * (m * m - 1.5 * m) <= a && a <= 1.5 * (m * m + 1.5 * m);
}

double symbol5_ratio(double xi1, double xi2, double xi1p, double tau, int wave_sign) {
  const double xi2sq = xi1 * xi1 + xi2 * xi2;
  const double eta = norm2(xi1 - xi1p, xi2);
  double den = bracket(xi1p) + 2.0 * bracket(tau + wave_sign * eta);
  if (in_region_b(xi1, xi2, tau)) den += 2.0 * bracket(tau + xi2sq);
  return (1.0 + xi2sq) / den;
}

ScanReport scan_symbol1(const ScanConfig& cfg) {
  cfg.validate();
  ScanReport r = refine_scan("symbol1", cfg, [&](double a, double b, double c, double d) {
    return symbol1_ratio(a, b, c, d, cfg.wave_sign, cfg.schrodinger_sign);
  });
  return r;
}

ScanReport scan_symbol2(const ScanConfig& cfg) {
  cfg.validate();
  return refine_scan("symbol2", cfg, [&](double a, double b, double c, double d) {
    return symbol2_ratio(a, b, c, d, cfg.wave_sign, cfg.schrodinger_sign);
  });
}

ScanReport check_symbol3(const ScanConfig& cfg) {
  cfg.validate();
  Axes axes;
  for (int k = 0; k < 3; ++k) axes[k] = axis(cfg.ranges[k], cfg.points_3d);
  axes[3] = {0.0};
  const double bound = std::numbers::sqrt2;
  const Best b = scan_grid(
      axes, [](double a, double c, double d, double) { return symbol3_ratio(a, c, d); },
      bound + 1e-12, cfg.threads);
  ScanReport r;
  r.id = "symbol3";
  r.constant = b.value;
  r.witness = b.at;
  r.history = {b.value};
  r.points = b.points;
  r.violations = b.violations;
  r.passed = b.violations == 0 && std::isfinite(b.value);
  return r;
}

ScanReport check_z_inequality(const ScanConfig& cfg) {
  cfg.validate();
  ScanReport r;
  r.id = "z_inequality";
  r.constant = kNegInf;
  for (std::size_t inu = 0; inu < cfg.nus.size(); ++inu) {
    const double nu = cfg.nus[inu];
    std::mt19937_64 rng(cfg.seed + inu);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> decade(-3.0, 3.0);
    auto log_uniform = [&] { return std::copysign(std::pow(10.0, decade(rng)), unit(rng)); };
    for (long i = 0; i < cfg.samples; ++i) {
      double y1 = 0.0;
      double y2 = 0.0;
      // Mix independent scales, correlated pairs (which probe the indicator
      // boundaries) and plain uniform samples.
      switch (i % 3) {
        case 0:
          y1 = log_uniform();
          y2 = log_uniform();
          break;
        case 1:
          y1 = log_uniform();
          y2 = y1 * 3.0 * unit(rng);
          break;
        default:
          y1 = unit(rng);
          y2 = unit(rng);
          break;
      }
      const double z = std::abs(y1 - y2);
      const double rhs = z_inequality_rhs(y1, y2, nu);
      ++r.points;
      if (z > rhs * (1.0 + 1e-12)) ++r.violations;
      const double ratio = rhs > 0.0 ? z / rhs : 0.0;
      if (ratio > r.constant) {
        r.constant = ratio;
        r.witness = {y1, y2, nu, 0.0};
      }
    }
  }
  r.history = {r.constant};
  r.passed = r.violations == 0;
  return r;
}

ScanReport check_b_region(const ScanConfig& cfg) {
  cfg.validate();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return refine_scan("symbol5", cfg, [&](double a, double b, double c, double d) {
    if (norm2(a, b) < 2.0 * std::abs(c)) return nan;
    return symbol5_ratio(a, b, c, d, cfg.wave_sign);
  });
}

std::string to_json(const ScanReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["C"] = r.constant;
  j["witness"] = r.witness;
  j["history"] = r.history;
  j["points"] = r.points;
  j["violations"] = r.violations;
  j["spread"] = r.spread;
  j["passed"] = r.passed;
  return j.dump(2);
}

}  // namespace zsl
