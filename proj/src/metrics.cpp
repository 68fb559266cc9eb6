#include "topoembed/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "topoembed/knn.hpp"
#include "topoembed/rng.hpp"

namespace topoembed {

TrainTestSplit train_test_split(const std::vector<int>& labels,
                                const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw InvalidInput("train_test_split: train_fraction must be in (0, 1)");
  const int n = static_cast<int>(labels.size());
  if (n < 2) throw InvalidInput("train_test_split: need at least 2 points");
  Rng rng(derive_seed(spec.seed, hash_name("split")));
  auto shuffle = [&rng](std::vector<int>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[rng.below(i)]);
  };

  TrainTestSplit split;
  if (spec.stratified) {
    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < n; ++i) by_class[labels[static_cast<std::size_t>(i)]].push_back(i);
    for (auto& [cls, members] : by_class) {
      (void)cls;
      shuffle(members);
      const std::size_t n_train = std::max<std::size_t>(
          1, static_cast<std::size_t>(
                 std::llround(spec.train_fraction *
                              static_cast<double>(members.size()))));
      for (std::size_t i = 0; i < members.size(); ++i)
        (i < n_train ? split.train : split.test).push_back(members[i]);
    }
  } else {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    shuffle(order);
    const std::size_t n_train = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(
               spec.train_fraction * static_cast<double>(n))));
    for (std::size_t i = 0; i < order.size(); ++i)
      (i < n_train ? split.train : split.test).push_back(order[i]);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

double knn_accuracy(const Embedding& embedding, const std::vector<int>& labels,
                    int k, const SplitSpec& split_spec) {
  const int n = static_cast<int>(embedding.n());
  if (static_cast<int>(labels.size()) != n)
    throw InvalidInput("knn_accuracy: label count mismatch");
  {
    std::vector<int> distinct(labels);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (distinct.size() < 2)
      throw InvalidInput("knn_accuracy: need at least 2 classes");
  }
  const TrainTestSplit split = train_test_split(labels, split_spec);
  if (k > static_cast<int>(split.train.size()))
    throw InvalidInput("knn_accuracy: k exceeds training set size");
  if (split.test.empty())
    throw InvalidInput("knn_accuracy: empty test set");

  const Mat& coords = embedding.coords;
  const int d = static_cast<int>(coords.cols());
  int correct = 0;
  using Entry = std::pair<double, int>;  // (squared distance, train index)
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  };
  for (const int q : split.test) {
    std::vector<Entry> heap;
    heap.reserve(static_cast<std::size_t>(k) + 1);
    for (const int t : split.train) {
      double s = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = coords(q, c) - coords(t, c);
        s += diff * diff;
      }
      const Entry cand{s, t};
      if (static_cast<int>(heap.size()) < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end(), worse);
      } else if (worse(cand, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), worse);
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end(), worse);
      }
    }
    std::map<int, int> votes;
    for (const auto& [dist2, idx] : heap) {
      (void)dist2;
      ++votes[labels[static_cast<std::size_t>(idx)]];
    }
    // Highest count wins; ties go to the smallest class id (map order).
    int best_class = 0, best_count = -1;
    for (const auto& [cls, count] : votes)
      if (count > best_count) {
        best_class = cls;
        best_count = count;
      }
    if (best_class == labels[static_cast<std::size_t>(q)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(split.test.size());
}

namespace {

// Per-row neighbor order by (distance, index); rank 1 = nearest.
std::vector<std::vector<int>> neighbor_order(const Mat& points) {
  const int n = static_cast<int>(points.rows());
  const Mat dist = pairwise_distances(points);
  std::vector<std::vector<int>> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = order[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) row.push_back(j);
    std::sort(row.begin(), row.end(), [&](int a, int b) {
      return dist(i, a) < dist(i, b) || (dist(i, a) == dist(i, b) && a < b);
    });
  }
  return order;
}

}  // namespace

double trustworthiness(const PointCloud& orig, const Embedding& embedding,
                       int k) {
  const int n = static_cast<int>(orig.n());
  if (embedding.n() != n)
    throw InvalidInput("trustworthiness: row count mismatch");
  if (!(k >= 1 && 2 * k < n))
    throw InvalidInput("trustworthiness: need 1 <= k < N/2");

  const auto orig_order = neighbor_order(orig.data);
  const NeighborGraph embedded = build_knn(embedding.coords, k);

  double penalty = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<int> rank(static_cast<std::size_t>(n), 0);
    const auto& row = orig_order[static_cast<std::size_t>(i)];
    for (std::size_t pos = 0; pos < row.size(); ++pos)
      rank[static_cast<std::size_t>(row[pos])] = static_cast<int>(pos) + 1;
    for (int s = 0; s < k; ++s) {
      const int j = embedded.indices(i, s);
      const int r = rank[static_cast<std::size_t>(j)];
      if (r > k) penalty += static_cast<double>(r - k);
    }
  }
  const double norm = 2.0 / (static_cast<double>(n) * k *
                             (2.0 * n - 3.0 * k - 1.0));
  return 1.0 - norm * penalty;
}

double knn_preservation(const PointCloud& orig, const Embedding& embedding,
                        int k) {
  const int n = static_cast<int>(orig.n());
  if (embedding.n() != n)
    throw InvalidInput("knn_preservation: row count mismatch");
  if (!(k >= 1 && k < n))
    throw InvalidInput("knn_preservation: need 1 <= k < N");
  const NeighborGraph a = build_knn(orig.data, k);
  const NeighborGraph b = build_knn(embedding.coords, k);
  double total = 0.0;
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < k; ++s) mark[static_cast<std::size_t>(a.indices(i, s))] = 1;
    int overlap = 0;
    for (int s = 0; s < k; ++s)
      overlap += mark[static_cast<std::size_t>(b.indices(i, s))];
    for (int s = 0; s < k; ++s) mark[static_cast<std::size_t>(a.indices(i, s))] = 0;
    total += static_cast<double>(overlap) / static_cast<double>(k);
  }
  return total / static_cast<double>(n);
}

}  // namespace topoembed
