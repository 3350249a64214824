#include "recnum/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace recnum {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
    double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

// Round tick spacing to 1/2/5 x 10^k.
std::vector<double> ticks(const Range& r, int target = 6) {
  double span = r.hi - r.lo;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  std::vector<double> out;
  double first = std::ceil(r.lo / step) * step;
  for (double v = first; v <= r.hi + 1e-12; v += step) {
    out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  }
  return out;
}

struct Frame {
  int width, height;
  int left = 64, right = 16, top = 36, bottom = 48;
  Range xr, yr;

  double x(double v) const {
    return left + (v - xr.lo) / (xr.hi - xr.lo) * (width - left - right);
  }
  double y(double v) const {
    // SVG y grows downward.
    return height - bottom -
           (v - yr.lo) / (yr.hi - yr.lo) * (height - top - bottom);
  }
};

void draw_axes(std::ostringstream& svg, const Frame& f,
               const SvgChartOptions& opt, bool numeric_x_ticks = true) {
  svg << "<rect x=\"0\" y=\"0\" width=\"" << f.width << "\" height=\""
      << f.height << "\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    svg << "<text x=\"" << f.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">"
        << opt.title << "</text>\n";
  }
  double x0 = f.left, x1 = f.width - f.right;
  double y0 = f.height - f.bottom, y1 = f.top;
  svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
      << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
      << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";

  if (numeric_x_ticks) {
    for (double t : ticks(f.xr)) {
      double px = f.x(t);
      svg << "<line x1=\"" << num(px) << "\" y1=\"" << y0 << "\" x2=\""
          << num(px) << "\" y2=\"" << y0 + 4 << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << num(px) << "\" y=\"" << y0 + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"11\">"
          << num(t) << "</text>\n";
    }
  }
  for (double t : ticks(f.yr)) {
    double py = f.y(t);
    svg << "<line x1=\"" << x0 - 4 << "\" y1=\"" << num(py) << "\" x2=\"" << x0
        << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x0 - 8 << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << num(t) << "</text>\n";
  }
  if (!opt.x_label.empty()) {
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << f.height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << opt.x_label << "</text>\n";
  }
  if (!opt.y_label.empty()) {
    svg << "<text x=\"14\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 14 "
        << (y0 + y1) / 2 << ")\">" << opt.y_label << "</text>\n";
  }
}

}  // namespace

std::string render_chart(const std::vector<SvgSeries>& series,
                         const SvgChartOptions& options) {
  Frame f;
  f.width = options.width;
  f.height = options.height;
  for (const SvgSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      f.xr.include(x);
      f.yr.include(y);
    }
  }
  f.xr.pad();
  f.yr.pad();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width
      << "\" height=\"" << f.height << "\">\n";
  draw_axes(svg, f, options);

  for (const SvgSeries& s : series) {
    if (s.draw_line && s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) {
        svg << num(f.x(x)) << ',' << num(f.y(y)) << ' ';
      }
      svg << "\"/>\n";
    }
    if (s.draw_points) {
      for (const auto& [x, y] : s.points) {
        svg << "<circle class=\"" << s.label << "\" cx=\"" << num(f.x(x))
            << "\" cy=\"" << num(f.y(y)) << "\" r=\"3.5\" fill=\"" << s.color
            << "\"/>\n";
      }
    }
  }

  // Legend in the top-right corner.
  int ly = f.top + 6;
  for (const SvgSeries& s : series) {
    if (s.label.empty()) continue;
    int lx = f.width - f.right - 150;
    svg << "<circle cx=\"" << lx << "\" cy=\"" << ly << "\" r=\"4\" fill=\""
        << s.color << "\"/>\n";
    svg << "<text x=\"" << lx + 10 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
    ly += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_bar_chart(const std::vector<SvgBar>& bars,
                             const SvgChartOptions& options) {
  Frame f;
  f.width = options.width;
  f.height = options.height;
  f.xr = {0.0, static_cast<double>(bars.size())};
  f.yr.include(0.0);
  for (const SvgBar& b : bars) f.yr.include(b.value);
  f.yr.pad();
  f.yr.lo = std::min(f.yr.lo, 0.0);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width
      << "\" height=\"" << f.height << "\">\n";
  draw_axes(svg, f, options, /*numeric_x_ticks=*/false);

  double slot = (f.width - f.left - f.right) / std::max<size_t>(bars.size(), 1);
  for (size_t i = 0; i < bars.size(); ++i) {
    double x = f.left + slot * i + slot * 0.15;
    double w = slot * 0.7;
    double y = f.y(bars[i].value);
    double y0 = f.y(0.0);
    svg << "<rect class=\"bar\" x=\"" << num(x) << "\" y=\"" << num(y)
        << "\" width=\"" << num(w) << "\" height=\"" << num(y0 - y)
        << "\" fill=\"#1f77b4\"/>\n";
    svg << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(y0 + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << bars[i].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << content;
}

}  // namespace recnum
