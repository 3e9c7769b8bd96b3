#pragma once

#include <string>
#include <vector>

namespace zsl {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

/// Self-contained SVG line chart. Points that are non-finite, or
/// non-positive on a log axis, are skipped.
std::string render_svg(const std::vector<Series>& series, const ChartOptions& opts);

}  // namespace zsl
