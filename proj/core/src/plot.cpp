#include "zsl/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "zsl/diagnostics.hpp"

namespace zsl {
namespace {

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Short fixed text for tick labels; full precision is not useful here.
std::string tick(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(3);
  os << v;
  return os.str();
}

struct Axis {
  bool log = false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double map(double v) const { return log ? std::log10(v) : v; }
  void add(double v) {
    if (!usable(v)) return;
    lo = std::min(lo, map(v));
    hi = std::max(hi, map(v));
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  // Coordinate in [0, 1].
  double unit(double v) const { return (map(v) - lo) / (hi - lo); }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
      if (out.size() < 2) {
        out = {std::pow(10.0, lo), std::pow(10.0, hi)};
      }
    } else {
      for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
    }
    return out;
  }
};

}  // namespace

std::string render_svg(const std::vector<Series>& series, const ChartOptions& opts) {
  Axis ax{opts.log_x}, ay{opts.log_y};
  for (const auto& s : series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (ax.usable(s.x[i]) && ay.usable(s.y[i])) {
        ax.add(s.x[i]);
        ay.add(s.y[i]);
      }
    }
  }
  ax.finish();
  ay.finish();

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;
  auto px = [&](double v) { return left + pw * ax.unit(v); };
  auto py = [&](double v) { return top + ph * (1.0 - ay.unit(v)); };

  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
     << opts.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << opts.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(opts.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    os << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
       << tick(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    os << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick(t)
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << opts.height - 10
     << "\" text-anchor=\"middle\">" << escape(opts.x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << top + ph / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(opts.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % kColors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
      if (!first) os << ' ';
      os << format_double(px(s.x[i])) << ',' << format_double(py(s.y[i]));
      first = false;
    }
    os << "\"/>\n";
    os << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 + 14 * static_cast<double>(k)
       << "\" fill=\"" << color << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace zsl
