#pragma once

// Minimal static SVG line charts: axes with ticks, staircase or polyline
// series, optional vertical marker lines and a legend.

#include <string>
#include <utility>
#include <vector>

namespace weyl::cli {

enum class SeriesStyle { line, staircase };

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
  SeriesStyle style = SeriesStyle::line;
  bool dashed = false;
};

struct VerticalMarker {
  std::string label;
  double x = 0.0;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
  std::vector<VerticalMarker> markers;
};

// Non-finite points and, on log axes, nonpositive coordinates are skipped.
std::string render_svg(const Plot& plot);

}  // namespace weyl::cli
