#pragma once

#include <string>
#include <vector>

#include "topoembed/model.hpp"
#include "topoembed/topology.hpp"

namespace topoembed {

// Self-contained SVG scatter of a 2-D embedding; one <circle> per point.
// Points are colored by label through a fixed categorical palette when
// labels are present.
std::string svg_scatter(const Mat& coords, const std::vector<int>& labels);

// Betti curve as a polyline with one vertex per grid sample.
std::string svg_betti_curve(const BettiCurve& curve);

// Simple multi-series line chart (used for the noise sweep figure).
std::string svg_line_chart(const std::vector<double>& x,
                           const std::vector<std::vector<double>>& series,
                           const std::vector<std::string>& series_names);

}  // namespace topoembed
