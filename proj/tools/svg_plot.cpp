#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace weyl::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fmt(const char* pattern, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, pattern, value);
  return buffer;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0;  // in transformed units
  double hi = 1.0;

  double transform(double v) const { return log ? std::log10(v) : v; }
  bool admits(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double fraction(double v) const { return (transform(v) - lo) / (hi - lo); }
};

Axis fit_axis(const std::vector<double>& values, bool log) {
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!axis.admits(v)) continue;
    lo = std::min(lo, axis.transform(v));
    hi = std::max(hi, axis.transform(v));
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12 * (1.0 + std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double margin = 0.04 * (hi - lo);
  axis.lo = lo - margin;
  axis.hi = hi + margin;
  return axis;
}

// Tick positions in data units.
std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    for (double e = std::ceil(axis.lo); e <= axis.hi; e += 1.0) out.push_back(std::pow(10.0, e));
    if (out.size() >= 2) return out;
    out.clear();
  }
  const double lo = axis.log ? std::pow(10.0, axis.lo) : axis.lo;
  const double hi = axis.log ? std::pow(10.0, axis.hi) : axis.hi;
  const double raw = (hi - lo) / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
    if (!axis.log || t > 0.0) out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return out;
}

}  // namespace

std::string render_svg(const Plot& plot) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : plot.series)
    for (const auto& [x, y] : s.points) {
      xs.push_back(x);
      ys.push_back(y);
    }
  for (const auto& m : plot.markers) xs.push_back(m.x);
  const Axis ax = fit_axis(xs, plot.log_x);
  const Axis ay = fit_axis(ys, plot.log_y);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + ax.fraction(x) * plot_w; };
  auto py = [&](double y) { return kTop + (1.0 - ay.fraction(y)) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"460\" viewBox=\"0 0 720 460\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"720\" height=\"460\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(plot.title) + "</text>\n";

  for (double t : ticks(ax)) {
    const double x = px(t);
    if (x < kLeft - 0.5 || x > kLeft + plot_w + 0.5) continue;
    svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" + fmt("%.2f", x) +
           "\" y2=\"" + fmt("%.2f", kTop + plot_h) + "\" stroke=\"#e4e4e4\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + fmt("%g", t) + "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = py(t);
    if (y < kTop - 0.5 || y > kTop + plot_h + 0.5) continue;
    svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" +
           fmt("%.2f", kLeft + plot_w) + "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"#e4e4e4\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", y + 4) + "\" text-anchor=\"end\">" +
           fmt("%g", t) + "</text>\n";
  }
  svg += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" + fmt("%.2f", plot_w) +
         "\" height=\"" + fmt("%.2f", plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"" + fmt("%.1f", kHeight - 16) +
         "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + fmt("%.1f", kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(plot.y_label) + "</text>\n";

  for (const auto& m : plot.markers) {
    if (!ax.admits(m.x)) continue;
    const double x = px(m.x);
    svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" + fmt("%.2f", x) +
           "\" y2=\"" + fmt("%.2f", kTop + plot_h) + "\" stroke=\"#888\" stroke-dasharray=\"2 3\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", x + 3) + "\" y=\"" + fmt("%.2f", kTop + 12) + "\" fill=\"#555\">" +
           escape(m.label) + "</text>\n";
  }

  double legend_y = kTop + 10;
  for (const auto& s : plot.series) {
    std::string path;
    for (const auto& [x, y] : s.points) {
      if (!ax.admits(x) || !ay.admits(y)) continue;
      const std::string sx = fmt("%.2f", px(x));
      const std::string sy = fmt("%.2f", py(y));
      if (path.empty())
        path = "M" + sx + " " + sy;
      else if (s.style == SeriesStyle::staircase)
        path += " H" + sx + " V" + sy;
      else
        path += " L" + sx + " " + sy;
    }
    if (!path.empty())
      svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"" +
             (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    const double lx = kLeft + plot_w + 14;
    svg += "<line x1=\"" + fmt("%.1f", lx) + "\" y1=\"" + fmt("%.1f", legend_y) + "\" x2=\"" + fmt("%.1f", lx + 22) +
           "\" y2=\"" + fmt("%.1f", legend_y) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
           (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    svg += "<text x=\"" + fmt("%.1f", lx + 28) + "\" y=\"" + fmt("%.1f", legend_y + 4) + "\">" + escape(s.label) +
           "</text>\n";
    legend_y += 20;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace weyl::cli
