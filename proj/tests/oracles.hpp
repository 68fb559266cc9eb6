// Independent reference implementations used only by the test suites.
// These deliberately take the slow, obvious route so they share no code
// path with the library: full boundary-matrix reduction for persistence,
// O(N^2) sort-based kNN, Nelder-Mead for the kernel fit, memoized
// recursion for DTW, and front peeling for the dominance sort.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "topoembed/knn.hpp"
#include "topoembed/model.hpp"
#include "topoembed/rng.hpp"
#include "topoembed/search.hpp"
#include "topoembed/topology.hpp"

namespace oracles {

using topoembed::Bar;
using topoembed::Mat;
using topoembed::Rng;

inline Mat random_cloud(int n, int d, Rng& rng) {
  Mat m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
  return m;
}

// ----------------------------------------------------------------- rips

// Full column reduction of the boundary matrix over all simplices of
// dimension <= 2 with diameter <= threshold (default: enclosing radius).
// Returns nonzero-persistence bars, dims 0 and 1.
inline std::vector<Bar> brute_force_rips(const Mat& points,
                                         double threshold = 0.0) {
  const int n = static_cast<int>(points.rows());
  const Mat dist = topoembed::pairwise_distances(points);
  if (threshold <= 0.0) threshold = topoembed::enclosing_radius(dist);

  struct Simplex {
    double diam;
    int dim;
    std::vector<int> verts;
  };
  std::vector<Simplex> simplices;
  for (int v = 0; v < n; ++v) simplices.push_back({0.0, 0, {v}});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(i, j) <= threshold) simplices.push_back({dist(i, j), 1, {i, j}});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double d =
            std::max(dist(i, j), std::max(dist(i, k), dist(j, k)));
        if (d <= threshold) simplices.push_back({d, 2, {i, j, k}});
      }
  std::sort(simplices.begin(), simplices.end(),
            [](const Simplex& a, const Simplex& b) {
              if (a.diam != b.diam) return a.diam < b.diam;
              if (a.dim != b.dim) return a.dim < b.dim;
              return a.verts < b.verts;
            });

  std::map<std::vector<int>, int> position;
  for (std::size_t s = 0; s < simplices.size(); ++s)
    position[simplices[s].verts] = static_cast<int>(s);

  // Columns as sets of row positions; reduce left to right.
  std::vector<std::set<int>> cols(simplices.size());
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    const auto& verts = simplices[s].verts;
    if (simplices[s].dim == 0) continue;
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      std::vector<int> face;
      for (std::size_t v = 0; v < verts.size(); ++v)
        if (v != drop) face.push_back(verts[v]);
      cols[s].insert(position.at(face));
    }
  }
  std::map<int, int> low_to_col;
  std::vector<Bar> bars;
  std::vector<bool> paired(simplices.size(), false);
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    auto& col = cols[s];
    while (!col.empty()) {
      const int low = *col.rbegin();
      const auto it = low_to_col.find(low);
      if (it == low_to_col.end()) break;
      // Z/2 column addition = symmetric difference.
      for (const int entry : cols[static_cast<std::size_t>(it->second)]) {
        if (col.count(entry))
          col.erase(entry);
        else
          col.insert(entry);
      }
    }
    if (!col.empty()) {
      const int low = *col.rbegin();
      low_to_col[low] = static_cast<int>(s);
      paired[static_cast<std::size_t>(low)] = true;
      paired[s] = true;
      const double birth = simplices[static_cast<std::size_t>(low)].diam;
      const double death = simplices[s].diam;
      if (death > birth)
        bars.push_back(
            Bar{simplices[static_cast<std::size_t>(low)].dim, birth, death});
    }
  }
  for (std::size_t s = 0; s < simplices.size(); ++s)
    if (!paired[s] && simplices[s].dim <= 1)
      bars.push_back(Bar{simplices[s].dim, simplices[s].diam,
                         std::numeric_limits<double>::infinity()});
  return bars;
}

// Multiset comparison key.
inline std::vector<std::tuple<int, double, double>> bar_key(
    std::vector<Bar> bars) {
  std::vector<std::tuple<int, double, double>> key;
  key.reserve(bars.size());
  for (const auto& b : bars) key.emplace_back(b.dim, b.birth, b.death);
  std::sort(key.begin(), key.end());
  return key;
}

// ------------------------------------------------------------------ knn

// All-pairs distances, per-row stable sort by (distance, index).
inline topoembed::IMat brute_force_knn(const Mat& points, int k) {
  const int n = static_cast<int>(points.rows());
  topoembed::IMat indices(n, k);
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> cand;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0;
      for (int c = 0; c < points.cols(); ++c) {
        const double diff = points(i, c) - points(j, c);
        s += diff * diff;
      }
      cand.emplace_back(s, j);
    }
    std::sort(cand.begin(), cand.end());
    for (int s = 0; s < k; ++s) indices(i, s) = cand[static_cast<std::size_t>(s)].second;
  }
  return indices;
}

// ----------------------------------------------------------- kernel fit

// Nelder-Mead minimization of the same grid SSE the fit targets, from a
// coarse grid-search start. Returns (a, b).
inline std::pair<double, double> nelder_mead_kernel_fit(double spread,
                                                        double min_dist) {
  const int m = 300;
  std::vector<double> grid(m), target(m);
  for (int i = 0; i < m; ++i) {
    grid[static_cast<std::size_t>(i)] = 3.0 * spread * i / (m - 1);
    const double x = grid[static_cast<std::size_t>(i)];
    target[static_cast<std::size_t>(i)] =
        x <= min_dist ? 1.0 : std::exp(-(x - min_dist) / spread);
  }
  auto sse = [&](double a, double b) {
    if (a <= 0 || b <= 0) return 1e100;
    double s = 0;
    for (int i = 0; i < m; ++i) {
      const double f =
          1.0 / (1.0 + a * std::pow(grid[static_cast<std::size_t>(i)], 2.0 * b));
      const double r = f - target[static_cast<std::size_t>(i)];
      s += r * r;
    }
    return s;
  };
  double best_a = 1, best_b = 1, best = 1e100;
  for (double a = 0.1; a <= 10.0; a *= 1.25)
    for (double b = 0.2; b <= 3.0; b += 0.1)
      if (const double s = sse(a, b); s < best) {
        best = s;
        best_a = a;
        best_b = b;
      }
  // Nelder-Mead on (a, b).
  using P = std::array<double, 2>;
  std::array<std::pair<double, P>, 3> simplex{
      std::make_pair(sse(best_a, best_b), P{best_a, best_b}),
      std::make_pair(sse(best_a * 1.1, best_b), P{best_a * 1.1, best_b}),
      std::make_pair(sse(best_a, best_b + 0.05), P{best_a, best_b + 0.05})};
  for (int iter = 0; iter < 500; ++iter) {
    std::sort(simplex.begin(), simplex.end());
    const P& a0 = simplex[0].second;
    const P& a1 = simplex[1].second;
    P centroid{(a0[0] + a1[0]) / 2, (a0[1] + a1[1]) / 2};
    const P& worst = simplex[2].second;
    P refl{2 * centroid[0] - worst[0], 2 * centroid[1] - worst[1]};
    const double fr = sse(refl[0], refl[1]);
    if (fr < simplex[0].first) {
      P expand{3 * centroid[0] - 2 * worst[0], 3 * centroid[1] - 2 * worst[1]};
      const double fe = sse(expand[0], expand[1]);
      simplex[2] = fe < fr ? std::make_pair(fe, expand) : std::make_pair(fr, refl);
    } else if (fr < simplex[1].first) {
      simplex[2] = {fr, refl};
    } else {
      P contract{(centroid[0] + worst[0]) / 2, (centroid[1] + worst[1]) / 2};
      const double fc = sse(contract[0], contract[1]);
      if (fc < simplex[2].first) {
        simplex[2] = {fc, contract};
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[static_cast<std::size_t>(i)].second = {
              (simplex[static_cast<std::size_t>(i)].second[0] + a0[0]) / 2,
              (simplex[static_cast<std::size_t>(i)].second[1] + a0[1]) / 2};
          simplex[static_cast<std::size_t>(i)].first =
              sse(simplex[static_cast<std::size_t>(i)].second[0],
                  simplex[static_cast<std::size_t>(i)].second[1]);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end());
  return {simplex[0].second[0], simplex[0].second[1]};
}

// ------------------------------------------------------------------ dtw

inline double dtw_recursive(const std::vector<int>& a,
                            const std::vector<int>& b) {
  std::map<std::pair<int, int>, double> memo;
  std::function<double(int, int)> go = [&](int i, int j) -> double {
    if (i < 0 || j < 0)
      return (i == -1 && j == -1) ? 0.0
                                  : std::numeric_limits<double>::infinity();
    const auto key = std::make_pair(i, j);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    const double cost = std::abs(a[static_cast<std::size_t>(i)] -
                                 b[static_cast<std::size_t>(j)]);
    const double best =
        cost + std::min({go(i - 1, j - 1), go(i - 1, j), go(i, j - 1)});
    memo[key] = best;
    return best;
  };
  return go(static_cast<int>(a.size()) - 1, static_cast<int>(b.size()) - 1);
}

// ---------------------------------------------------------------- fronts

// Repeatedly peel the non-dominated set via pairwise checks.
inline std::vector<std::vector<int>> peel_fronts(
    const std::vector<topoembed::Objectives>& pop) {
  std::vector<int> remaining(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) remaining[i] = static_cast<int>(i);
  std::vector<std::vector<int>> fronts;
  while (!remaining.empty()) {
    std::vector<int> front, rest;
    for (const int i : remaining) {
      bool dominated = false;
      for (const int j : remaining)
        if (i != j &&
            topoembed::dominates(pop[static_cast<std::size_t>(j)],
                                 pop[static_cast<std::size_t>(i)])) {
          dominated = true;
          break;
        }
      (dominated ? rest : front).push_back(i);
    }
    fronts.push_back(front);
    remaining = std::move(rest);
  }
  return fronts;
}

}  // namespace oracles
