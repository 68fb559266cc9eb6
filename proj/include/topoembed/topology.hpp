#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "topoembed/manifolds.hpp"
#include "topoembed/model.hpp"

namespace topoembed {

struct Bar {
  int dim = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();

  bool finite() const { return std::isfinite(death); }
  double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
  std::vector<Bar> bars;
  double threshold = 0.0;  // max filtration value used
};

struct BettiCurve {
  std::vector<double> grid;  // ascending filtration values
  std::vector<int> counts;   // bars alive at each grid value
  int dim = 0;
};

// Smallest radius at which the Rips complex becomes a cone:
// min over points of the max distance from that point. Truncating the
// filtration there loses no finite bar.
double enclosing_radius(const Mat& dist);

// Vietoris-Rips persistence over Z/2 in dimensions 0 and 1.
// H0 comes from a union-find sweep over distance-sorted edges (deaths are
// the merging edge weights, one infinite bar per component at the
// threshold). H1 pairs are computed by coboundary reduction of the edge
// columns left unpaired by the H0 sweep. Zero-persistence bars are dropped.
// threshold <= 0 selects the enclosing radius. Throws InvalidInput when N
// exceeds size_cap (the complex grows cubically).
PersistenceDiagram rips_persistence(const Mat& points, int maxdim = 1,
                                    double threshold = 0.0,
                                    int size_cap = 5000);
PersistenceDiagram rips_persistence(const PointCloud& cloud, int maxdim = 1,
                                    double threshold = 0.0,
                                    int size_cap = 5000);
PersistenceDiagram rips_persistence_from_distances(const Mat& dist,
                                                   int maxdim = 1,
                                                   double threshold = 0.0);

// Number of finite bars in the given dimension whose persistence is at
// least rel times the maximum finite persistence in that dimension.
int significant_bars(const PersistenceDiagram& diagram, int dim,
                     double rel = 0.3);

// Bars alive per grid value on a uniform grid over [0, max finite death of
// the dimension] (falls back to [0, 1] when there are no finite bars).
// Aliveness is half-open: birth <= t < death; infinite bars count
// everywhere past their birth.
BettiCurve betti_curve(const PersistenceDiagram& diagram, int dim,
                       int grid_size = 200);

// Exact dynamic-programming DTW with absolute-difference local cost over
// the two count sequences. Curves must share the homology dimension.
double dtw_distance(const BettiCurve& a, const BettiCurve& b);

struct IslandMetrics {
  double longest_h0 = 0.0;       // largest finite H0 persistence
  double top5_over_median = 0.0; // mean of 5 largest / median, finite H0 bars
};

// Requires at least 6 finite H0 bars, else throws InvalidInput.
IslandMetrics island_metrics(const PersistenceDiagram& diagram);

// Raised by topology_error when the embedder fails on a stress manifold;
// search maps it to worst-case objectives.
struct TrialFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using EmbedFn = std::function<Embedding(const PointCloud&)>;

// Sum over the stress set of |significant H1 bars in the 2-D embedding -
// true beta1|. Manifold samples are drawn deterministically from seed.
int topology_error(const EmbedFn& embed_fn,
                   const std::vector<StressManifold>& stress_set,
                   uint64_t seed);

}  // namespace topoembed
