#pragma once

#include <string>
#include <utility>
#include <vector>

namespace clockgame::cli {

// Self-contained SVG 1.1 line chart: axes, ticks, one polyline. No plotting
// dependency; the output is deterministic for identical inputs.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<std::pair<double, double>>& points);

}  // namespace clockgame::cli
