#include "harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "harness/csv.hpp"

namespace clockgame::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 52.0;

std::string coord(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<std::pair<double, double>>& points) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  if (!points.empty()) {
    x_min = x_max = points.front().first;
    y_min = y_max = points.front().second;
    for (const auto& [x, y] : points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kMarginTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";

  // axes
  out << "  <line x1=\"" << coord(kMarginLeft) << "\" y1=\"" << coord(kMarginTop) << "\" x2=\""
      << coord(kMarginLeft) << "\" y2=\"" << coord(kHeight - kMarginBottom)
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << coord(kMarginLeft) << "\" y1=\"" << coord(kHeight - kMarginBottom)
      << "\" x2=\"" << coord(kWidth - kMarginRight) << "\" y2=\"" << coord(kHeight - kMarginBottom)
      << "\" stroke=\"black\"/>\n";

  // ticks (5 per axis) with labels
  for (int t = 0; t <= 4; ++t) {
    const double fx = x_min + (x_max - x_min) * t / 4.0;
    const double fy = y_min + (y_max - y_min) * t / 4.0;
    const double px = sx(fx);
    const double py = sy(fy);
    out << "  <line x1=\"" << coord(px) << "\" y1=\"" << coord(kHeight - kMarginBottom)
        << "\" x2=\"" << coord(px) << "\" y2=\"" << coord(kHeight - kMarginBottom + 5)
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << coord(px) << "\" y=\"" << coord(kHeight - kMarginBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(fx) << "</text>\n";
    out << "  <line x1=\"" << coord(kMarginLeft - 5) << "\" y1=\"" << coord(py) << "\" x2=\""
        << coord(kMarginLeft) << "\" y2=\"" << coord(py) << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << coord(kMarginLeft - 8) << "\" y=\"" << coord(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(fy) << "</text>\n";
  }

  out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  out << "  <text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << y_label << "</text>\n";

  if (!points.empty()) {
    out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i) out << ' ';
      out << coord(sx(points[i].first)) << ',' << coord(sy(points[i].second));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace clockgame::cli
