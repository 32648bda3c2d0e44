#pragma once

#include <string>
#include <vector>

namespace hystbl {

struct Series {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool dashed = false;
  double width = 1.5;
  bool markers = false;  // draw point markers instead of a line
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  int width = 720, height = 480;
};

// Minimal static line-plot emitter; no external plotting dependency.
void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<Series>& series);

}  // namespace hystbl
