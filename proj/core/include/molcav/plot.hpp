#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "molcav/wigner.hpp"

namespace molcav {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;  // include units, e.g. "t (fs)"
  std::string y_label;
  std::vector<LineSeries> series;
};

/// Self-contained SVG. Same input gives a byte-identical document.
/// Throws Error when there is no series or no finite point to draw.
std::string render_line_plot(const LinePlot& plot);

/// Filled map plus contour lines; diverging palette with white fixed at W = 0
/// and a symmetric colour scale, so negative regions always read as blue.
std::string render_wigner_plot(const std::vector<WignerField>& panels, const std::string& title);

void write_text_file(const std::filesystem::path& path, const std::string& text);

/// One iso-line segment from marching squares, in phase-space coordinates.
struct ContourSegment {
  double x0, y0, x1, y1;
};
std::vector<ContourSegment> contour_segments(const WignerField& field, double level);

}  // namespace molcav
