#pragma once
// Minimal self-contained SVG output: line plots and heatmaps. No styling
// ambitions; just enough to eyeball every generated curve and grid.

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace geomsense::svg {

struct Series {
  std::string name;
  std::vector<double> x, y;
};

struct LinePlotOptions {
  std::string title, x_label, y_label;
  int width = 720, height = 480;
  bool log_y = false;
};

std::string line_plot(const std::vector<Series>& series, const LinePlotOptions& opts);

struct HeatmapOptions {
  std::string title, x_label, y_label;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  int width = 560, height = 560;
};

// Diverging blue-white-red map, symmetric about zero.
std::string heatmap(const Eigen::MatrixXd& values, const HeatmapOptions& opts);

void write_file(const std::string& path, const std::string& content);

}  // namespace geomsense::svg
