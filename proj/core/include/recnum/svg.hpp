// svg.hpp — dependency-free SVG plotting: a scatter/line chart for frontier
// and trajectory views and a bar chart for |M| histograms.

#ifndef RECNUM_SVG_HPP
#define RECNUM_SVG_HPP

#include <string>
#include <vector>

namespace recnum {

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  bool draw_line = false;    // connect points with a polyline
  bool draw_points = true;   // circles at each point
  std::vector<std::pair<double, double>> points;  // (x, y)
};

struct SvgChartOptions {
  int width = 720;
  int height = 480;
  std::string title;
  std::string x_label;
  std::string y_label;
};

std::string render_chart(const std::vector<SvgSeries>& series,
                         const SvgChartOptions& options);

struct SvgBar {
  std::string label;  // x tick text
  double value = 0.0;
};

std::string render_bar_chart(const std::vector<SvgBar>& bars,
                             const SvgChartOptions& options);

void write_file(const std::string& path, const std::string& content);

}  // namespace recnum

#endif  // RECNUM_SVG_HPP
