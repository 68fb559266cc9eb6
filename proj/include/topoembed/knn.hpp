#pragma once

#include <vector>

#include "topoembed/model.hpp"

namespace topoembed {

// Exact k-nearest-neighbor graph. Row i of indices holds the k nearest
// points to i (self excluded) in ascending distance order; distance ties
// are broken by the smaller point index.
struct NeighborGraph {
  int k = 0;
  IMat indices;    // N x k
  Mat distances;   // N x k
};

struct Edge {
  int i = 0, j = 0;  // i < j
  double dist = 0.0;
};

// Brute-force exact kNN, parallel over query points. Output is independent
// of the thread count. Requires 1 <= k < N.
NeighborGraph build_knn(const PointCloud& cloud, int k, unsigned n_threads = 1);
NeighborGraph build_knn(const Mat& points, int k, unsigned n_threads = 1);

// Undirected union of the directed kNN relations, deduplicated and sorted
// by (i, j). Each edge carries the Euclidean distance between its endpoints.
std::vector<Edge> symmetrized_edges(const NeighborGraph& graph);

// Connected components over the symmetrized edge set; returns a component
// id per vertex, ids numbered 0..n_components-1 in order of first vertex.
std::vector<int> connected_components(int n, const std::vector<Edge>& edges,
                                      int* n_components = nullptr);

}  // namespace topoembed
