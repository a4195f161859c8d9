#pragma once

#include <string>
#include <vector>

namespace ulpar::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool logx = false;
  bool logy = false;
};

// Line plot as a standalone SVG document. Nonpositive values are dropped on log axes.
std::string line_plot_svg(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace ulpar::cli
