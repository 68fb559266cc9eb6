#include "topoembed/knn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "topoembed/parallel.hpp"

namespace topoembed {

NeighborGraph build_knn(const Mat& points, int k, unsigned n_threads) {
  const Eigen::Index n = points.rows(), d = points.cols();
  if (k < 1 || k >= n)
    throw InvalidInput("build_knn: need 1 <= k < N (k=" + std::to_string(k) +
                       ", N=" + std::to_string(n) + ")");
  NeighborGraph graph;
  graph.k = k;
  graph.indices.resize(n, k);
  graph.distances.resize(n, k);

  parallel_for(static_cast<std::size_t>(n), n_threads, [&](std::size_t qi) {
    const Eigen::Index i = static_cast<Eigen::Index>(qi);
    const double* xi = points.row(i).data();
    // Max-heap of the current k best (squared distance, index); the worst
    // candidate sits on top. Ties prefer the smaller index.
    using Entry = std::pair<double, int>;
    std::vector<Entry> heap;
    heap.reserve(static_cast<std::size_t>(k) + 1);
    auto worse = [](const Entry& a, const Entry& b) {
      return a.first < b.first || (a.first == b.first && a.second < b.second);
    };
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double* xj = points.row(j).data();
      double s = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) {
        const double diff = xi[c] - xj[c];
        s += diff * diff;
      }
      const Entry cand{s, static_cast<int>(j)};
      if (static_cast<int>(heap.size()) < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end(), worse);
      } else if (worse(cand, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), worse);
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end(), worse);
      }
    }
    std::sort(heap.begin(), heap.end(), worse);
    for (int s = 0; s < k; ++s) {
      graph.indices(i, s) = heap[static_cast<std::size_t>(s)].second;
      graph.distances(i, s) = std::sqrt(heap[static_cast<std::size_t>(s)].first);
    }
  });
  return graph;
}

NeighborGraph build_knn(const PointCloud& cloud, int k, unsigned n_threads) {
  cloud.validate();
  return build_knn(cloud.data, k, n_threads);
}

std::vector<Edge> symmetrized_edges(const NeighborGraph& graph) {
  const Eigen::Index n = graph.indices.rows();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * graph.k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int s = 0; s < graph.k; ++s) {
      const int j = graph.indices(i, s);
      Edge e;
      e.i = std::min<int>(static_cast<int>(i), j);
      e.j = std::max<int>(static_cast<int>(i), j);
      e.dist = graph.distances(i, s);
      edges.push_back(e);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i < b.i || (a.i == b.i && a.j < b.j);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return a.i == b.i && a.j == b.j;
                          }),
              edges.end());
  return edges;
}

std::vector<int> connected_components(int n, const std::vector<Edge>& edges,
                                      int* n_components) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& e : edges) {
    const int a = find(e.i), b = find(e.j);
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next_id = 0;
  for (int v = 0; v < n; ++v) {
    const int root = find(v);
    if (comp[static_cast<std::size_t>(root)] == -1)
      comp[static_cast<std::size_t>(root)] = next_id++;
    comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(root)];
  }
  if (n_components) *n_components = next_id;
  return comp;
}

}  // namespace topoembed
