#pragma once

#include <string>
#include <vector>

namespace georos::sim {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Writes a log-log scatter/line plot as a standalone SVG. Non-finite or
/// non-positive points are dropped (log axes).
void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series);

}  // namespace georos::sim
