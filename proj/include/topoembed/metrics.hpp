#pragma once

#include <cstdint>
#include <vector>

#include "topoembed/model.hpp"

namespace topoembed {

struct SplitSpec {
  double train_fraction = 0.7;
  uint64_t seed = 0;
  bool stratified = true;
};

struct TrainTestSplit {
  std::vector<int> train;
  std::vector<int> test;
};

// Deterministic shuffled split; stratified keeps the per-class ratio and
// guarantees at least one training point per class.
TrainTestSplit train_test_split(const std::vector<int>& labels,
                                const SplitSpec& spec);

// Majority-vote kNN classification accuracy of the embedding: each test
// point is labeled by its k nearest training points (distance ties to the
// smaller index, vote ties to the smallest class id).
double knn_accuracy(const Embedding& embedding, const std::vector<int>& labels,
                    int k, const SplitSpec& split);

// Rank-based intrusion penalty: 1 - 2/(N k (2N-3k-1)) * sum over points of
// sum over embedded-but-not-original neighbors of (original rank - k).
// 1.0 means every embedded neighborhood is a subset of the original one.
double trustworthiness(const PointCloud& orig, const Embedding& embedding,
                       int k);

// Mean over points of |original kNN set intersect embedded kNN set| / k.
double knn_preservation(const PointCloud& orig, const Embedding& embedding,
                        int k);

}  // namespace topoembed
