#include "topoembed/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace topoembed {

namespace {

const char* kPalette[12] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                            "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
                            "#9c755f", "#bab0ac", "#1170aa", "#a3acb9"};

struct ViewMap {
  double x0, y0, sx, sy;
  double width, height;

  ViewMap(double xmin, double xmax, double ymin, double ymax, double w,
          double h, double margin)
      : width(w), height(h) {
    const double xr = std::max(xmax - xmin, 1e-12);
    const double yr = std::max(ymax - ymin, 1e-12);
    sx = (w - 2 * margin) / xr;
    sy = (h - 2 * margin) / yr;
    x0 = margin - xmin * sx;
    y0 = h - margin + ymin * sy;  // flip y so larger values go up
  }
  double x(double v) const { return x0 + v * sx; }
  double y(double v) const { return y0 - v * sy; }
};

}  // namespace

std::string svg_scatter(const Mat& coords, const std::vector<int>& labels) {
  if (coords.cols() != 2)
    throw InvalidInput("svg_scatter: embedding must be 2-D");
  const double w = 640, h = 640;
  ViewMap view(coords.col(0).minCoeff(), coords.col(0).maxCoeff(),
               coords.col(1).minCoeff(), coords.col(1).maxCoeff(), w, h, 20);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    const char* color =
        labels.empty()
            ? kPalette[0]
            : kPalette[((labels[static_cast<std::size_t>(i)] % 12) + 12) % 12];
    out << "<circle cx=\"" << view.x(coords(i, 0)) << "\" cy=\""
        << view.y(coords(i, 1)) << "\" r=\"2\" fill=\"" << color
        << "\" fill-opacity=\"0.7\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_betti_curve(const BettiCurve& curve) {
  const double w = 640, h = 400;
  const int max_count =
      *std::max_element(curve.counts.begin(), curve.counts.end());
  ViewMap view(curve.grid.front(), curve.grid.back(), 0,
               std::max(max_count, 1), w, h, 30);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"" << kPalette[0]
      << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (i) out << ' ';
    out << view.x(curve.grid[i]) << ',' << view.y(curve.counts[i]);
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

std::string svg_line_chart(const std::vector<double>& x,
                           const std::vector<std::vector<double>>& series,
                           const std::vector<std::string>& series_names) {
  if (series.empty() || x.empty())
    throw InvalidInput("svg_line_chart: empty input");
  double ymax = 1e-12;
  for (const auto& s : series)
    for (const double v : s) ymax = std::max(ymax, v);
  const double w = 640, h = 400;
  ViewMap view(x.front(), x.back(), 0, ymax, w, h, 40);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 12];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < series[s].size(); ++i) {
      if (i) out << ' ';
      out << view.x(x[i]) << ',' << view.y(series[s][i]);
    }
    out << "\"/>\n";
    out << "<text x=\"" << (w - 150) << "\" y=\"" << (30 + 18 * s)
        << "\" fill=\"" << color << "\" font-size=\"13\">"
        << (s < series_names.size() ? series_names[s] : "series") << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace topoembed
