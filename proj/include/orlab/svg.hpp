#pragma once

#include <string>
#include <vector>

namespace orlab {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  bool markers = false;
};

/// Static line plot with axes and a legend.
std::string render_svg(const PlotSpec& plot, const std::vector<Series>& series);
void write_svg(const std::string& path, const PlotSpec& plot, const std::vector<Series>& series);

}  // namespace orlab
