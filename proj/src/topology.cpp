#include "topoembed/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "topoembed/rng.hpp"

namespace topoembed {

double enclosing_radius(const Mat& dist) {
  double radius = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < dist.rows(); ++i)
    radius = std::min(radius, dist.row(i).maxCoeff());
  return radius;
}

namespace {

struct EdgeSimplex {
  double diam;
  int i, j;  // i < j
};

// Union-find with path halving.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void link(int a, int b) { parent[static_cast<std::size_t>(a)] = b; }
};

// A cofacet of edge (i, j): the triangle obtained by adding vertex k.
// Triangles are keyed by their sorted vertex triple packed into a uint64;
// the filtration order is (diameter, key) ascending.
struct Cofacet {
  double diam;
  uint64_t key;

  bool operator==(const Cofacet& o) const { return key == o.key; }
};

struct CofacetLater {
  // Max-heap comparator; top() is the minimum under (diam, key).
  bool operator()(const Cofacet& a, const Cofacet& b) const {
    return a.diam > b.diam || (a.diam == b.diam && a.key > b.key);
  }
};

uint64_t triangle_key(int a, int b, int c, int n) {
  // a < b < c assumed.
  return (static_cast<uint64_t>(a) * static_cast<uint64_t>(n) +
          static_cast<uint64_t>(b)) *
             static_cast<uint64_t>(n) +
         static_cast<uint64_t>(c);
}

uint64_t cofacet_key(int i, int j, int k, int n) {
  int a = i, b = j, c = k;
  if (c < a) std::swap(a, c);
  if (c < b) std::swap(b, c);
  if (b < a) std::swap(a, b);
  return triangle_key(a, b, c, n);
}

using CofacetHeap =
    std::priority_queue<Cofacet, std::vector<Cofacet>, CofacetLater>;

// Pop the minimal cofacet with odd multiplicity (Z/2 coefficients).
// All copies of the returned pivot are removed from the heap.
bool pop_pivot(CofacetHeap& heap, Cofacet& pivot) {
  while (!heap.empty()) {
    pivot = heap.top();
    heap.pop();
    std::size_t multiplicity = 1;
    while (!heap.empty() && heap.top() == pivot) {
      heap.pop();
      ++multiplicity;
    }
    if (multiplicity % 2 == 1) return true;
  }
  return false;
}

}  // namespace

PersistenceDiagram rips_persistence_from_distances(const Mat& dist, int maxdim,
                                                   double threshold) {
  const int n = static_cast<int>(dist.rows());
  if (maxdim < 0 || maxdim > 1)
    throw InvalidInput("rips_persistence: only maxdim 0 or 1 supported");
  PersistenceDiagram diagram;
  if (n <= 0) throw InvalidInput("rips_persistence: empty input");
  if (threshold <= 0.0)
    threshold = (n >= 2) ? enclosing_radius(dist) : 0.0;
  diagram.threshold = threshold;
  if (n == 1) {
    diagram.bars.push_back(Bar{0, 0.0, std::numeric_limits<double>::infinity()});
    return diagram;
  }

  std::vector<EdgeSimplex> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = dist(i, j);
      if (d <= threshold) edges.push_back(EdgeSimplex{d, i, j});
    }
  std::sort(edges.begin(), edges.end(),
            [](const EdgeSimplex& a, const EdgeSimplex& b) {
              if (a.diam != b.diam) return a.diam < b.diam;
              return a.i < b.i || (a.i == b.i && a.j < b.j);
            });

  // Dimension 0: merging edges die, the others go on to create cycles.
  UnionFind dset(n);
  std::vector<EdgeSimplex> columns;
  for (const auto& e : edges) {
    const int a = dset.find(e.i), b = dset.find(e.j);
    if (a != b) {
      dset.link(a, b);
      if (e.diam > 0.0) diagram.bars.push_back(Bar{0, 0.0, e.diam});
    } else if (maxdim >= 1) {
      columns.push_back(e);
    }
  }
  for (int v = 0; v < n; ++v)
    if (dset.find(v) == v)
      diagram.bars.push_back(
          Bar{0, 0.0, std::numeric_limits<double>::infinity()});

  if (maxdim >= 1 && !columns.empty()) {
    // Coboundary reduction in reverse filtration order. Each reduced column
    // is remembered as the list of edges whose combined coboundary it is, so
    // later columns hitting the same pivot can be folded in.
    std::unordered_map<uint64_t, int> pivot_to_column;
    pivot_to_column.reserve(columns.size());
    std::vector<std::vector<int>> stored;  // column id -> edge ids (descending order indices)
    stored.reserve(columns.size());

    auto push_cofacets = [&](const EdgeSimplex& e, CofacetHeap& heap) {
      for (int k = 0; k < n; ++k) {
        if (k == e.i || k == e.j) continue;
        const double d =
            std::max(e.diam, std::max(dist(e.i, k), dist(e.j, k)));
        if (d <= threshold)
          heap.push(Cofacet{d, cofacet_key(e.i, e.j, k, n)});
      }
    };

    for (int c = static_cast<int>(columns.size()) - 1; c >= 0; --c) {
      const EdgeSimplex& e = columns[static_cast<std::size_t>(c)];

      // Fast path: find the minimal cofacet of the single edge directly.
      // Cofacet keys grow with k, so the first k whose triangle diameter
      // equals the edge diameter is already the minimal (diam, key)
      // cofacet and the scan can stop.
      bool have_pivot = false;
      Cofacet pivot{0.0, 0};
      const double* row_i = &dist(e.i, 0);
      const double* row_j = &dist(e.j, 0);
      for (int k = 0; k < n; ++k) {
        if (k == e.i || k == e.j) continue;
        const double d = std::max(e.diam, std::max(row_i[k], row_j[k]));
        if (d > threshold) continue;
        if (d == e.diam) {
          pivot = Cofacet{d, cofacet_key(e.i, e.j, k, n)};
          have_pivot = true;
          break;
        }
        const Cofacet cand{d, cofacet_key(e.i, e.j, k, n)};
        if (!have_pivot || CofacetLater()(pivot, cand)) {
          pivot = cand;
          have_pivot = true;
        }
      }

      std::vector<int> col_edges{c};
      if (have_pivot && !pivot_to_column.count(pivot.key)) {
        pivot_to_column.emplace(pivot.key, static_cast<int>(stored.size()));
        stored.push_back(std::move(col_edges));
        if (pivot.diam > e.diam)
          diagram.bars.push_back(Bar{1, e.diam, pivot.diam});
        continue;
      }

      // Slow path: full heap-based reduction.
      CofacetHeap working;
      push_cofacets(e, working);
      bool essential = true;
      while (pop_pivot(working, pivot)) {
        auto it = pivot_to_column.find(pivot.key);
        if (it == pivot_to_column.end()) {
          pivot_to_column.emplace(pivot.key, static_cast<int>(stored.size()));
          if (pivot.diam > e.diam)
            diagram.bars.push_back(Bar{1, e.diam, pivot.diam});
          essential = false;
          break;
        }
        // The stored column's coboundary also holds this pivot; restore the
        // popped copy so the two cancel when folded together.
        working.push(pivot);
        for (const int other : stored[static_cast<std::size_t>(it->second)]) {
          push_cofacets(columns[static_cast<std::size_t>(other)], working);
          col_edges.push_back(other);
        }
      }
      if (essential) {
        diagram.bars.push_back(
            Bar{1, e.diam, std::numeric_limits<double>::infinity()});
      } else {
        stored.push_back(std::move(col_edges));
      }
    }
  }

  std::sort(diagram.bars.begin(), diagram.bars.end(),
            [](const Bar& a, const Bar& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.death < b.death;
            });
  return diagram;
}

PersistenceDiagram rips_persistence(const Mat& points, int maxdim,
                                    double threshold, int size_cap) {
  if (points.rows() > size_cap)
    throw InvalidInput("rips_persistence: N=" + std::to_string(points.rows()) +
                       " exceeds the size cap " + std::to_string(size_cap));
  if (points.rows() == 1) {
    PersistenceDiagram diagram;
    diagram.threshold = threshold;
    diagram.bars.push_back(Bar{0, 0.0, std::numeric_limits<double>::infinity()});
    return diagram;
  }
  return rips_persistence_from_distances(pairwise_distances(points), maxdim,
                                         threshold);
}

PersistenceDiagram rips_persistence(const PointCloud& cloud, int maxdim,
                                    double threshold, int size_cap) {
  cloud.validate();
  return rips_persistence(cloud.data, maxdim, threshold, size_cap);
}

int significant_bars(const PersistenceDiagram& diagram, int dim, double rel) {
  if (!(rel > 0.0 && rel <= 1.0))
    throw InvalidInput("significant_bars: rel must lie in (0, 1]");
  double max_pers = 0.0;
  for (const auto& bar : diagram.bars)
    if (bar.dim == dim && bar.finite())
      max_pers = std::max(max_pers, bar.persistence());
  if (max_pers <= 0.0) return 0;
  int count = 0;
  for (const auto& bar : diagram.bars)
    if (bar.dim == dim && bar.finite() &&
        bar.persistence() >= rel * max_pers)
      ++count;
  return count;
}

BettiCurve betti_curve(const PersistenceDiagram& diagram, int dim,
                       int grid_size) {
  if (grid_size < 2) throw InvalidInput("betti_curve: grid_size must be >= 2");
  double span = 0.0;
  for (const auto& bar : diagram.bars)
    if (bar.dim == dim && bar.finite()) span = std::max(span, bar.death);
  if (span <= 0.0) span = 1.0;
  BettiCurve curve;
  curve.dim = dim;
  curve.grid.resize(static_cast<std::size_t>(grid_size));
  curve.counts.assign(static_cast<std::size_t>(grid_size), 0);
  for (int g = 0; g < grid_size; ++g)
    curve.grid[static_cast<std::size_t>(g)] =
        span * static_cast<double>(g) / static_cast<double>(grid_size - 1);
  for (const auto& bar : diagram.bars) {
    if (bar.dim != dim) continue;
    for (int g = 0; g < grid_size; ++g) {
      const double t = curve.grid[static_cast<std::size_t>(g)];
      if (bar.birth <= t && t < bar.death) ++curve.counts[static_cast<std::size_t>(g)];
    }
  }
  return curve;
}

double dtw_distance(const BettiCurve& a, const BettiCurve& b) {
  if (a.dim != b.dim)
    throw InvalidInput("dtw_distance: homology dimensions differ");
  const std::size_t n = a.counts.size(), m = b.counts.size();
  if (n == 0 || m == 0) throw InvalidInput("dtw_distance: empty curve");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = inf;
    for (std::size_t j = 1; j <= m; ++j) {
      const double cost =
          std::abs(static_cast<double>(a.counts[i - 1]) -
                   static_cast<double>(b.counts[j - 1]));
      cur[j] = cost + std::min({prev[j], prev[j - 1], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

IslandMetrics island_metrics(const PersistenceDiagram& diagram) {
  std::vector<double> pers;
  for (const auto& bar : diagram.bars)
    if (bar.dim == 0 && bar.finite()) pers.push_back(bar.persistence());
  if (pers.size() < 6)
    throw InvalidInput("island_metrics: need at least 6 finite H0 bars, got " +
                       std::to_string(pers.size()));
  std::sort(pers.begin(), pers.end());
  IslandMetrics metrics;
  metrics.longest_h0 = pers.back();
  double top5 = 0.0;
  for (std::size_t i = pers.size() - 5; i < pers.size(); ++i) top5 += pers[i];
  top5 /= 5.0;
  const std::size_t mid = pers.size() / 2;
  const double median = (pers.size() % 2 == 1)
                            ? pers[mid]
                            : 0.5 * (pers[mid - 1] + pers[mid]);
  metrics.top5_over_median = top5 / median;
  return metrics;
}

int topology_error(const EmbedFn& embed_fn,
                   const std::vector<StressManifold>& stress_set,
                   uint64_t seed) {
  if (stress_set.empty()) throw InvalidInput("topology_error: empty stress set");
  int total = 0;
  for (std::size_t m = 0; m < stress_set.size(); ++m) {
    const auto& manifold = stress_set[m];
    const PointCloud sample =
        sample_manifold(manifold, derive_seed(seed, hash_name("stress"), m));
    Embedding embedded;
    try {
      embedded = embed_fn(sample);
    } catch (const std::exception& e) {
      throw TrialFailure(std::string("embedder failed on ") + manifold.name() +
                         ": " + e.what());
    }
    if (embedded.dim() != 2)
      throw TrialFailure("topology_error: embedding must be 2-D");
    if (!embedded.coords.allFinite())
      throw TrialFailure("topology_error: embedding has non-finite entries");
    const auto diagram = rips_persistence(embedded.coords, 1);
    total += std::abs(significant_bars(diagram, 1, 0.3) - manifold.true_beta1);
  }
  return total;
}

}  // namespace topoembed
