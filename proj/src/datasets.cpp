#include "topoembed/datasets.hpp"

#include "topoembed/rng.hpp"

namespace topoembed {

PointCloud make_blobs(int n, int dim, int n_classes, double cluster_std,
                      double center_box, uint64_t seed) {
  if (n < 1 || dim < 1 || n_classes < 1)
    throw InvalidInput("make_blobs: bad shape parameters");
  Rng rng(seed);
  Mat centers(n_classes, dim);
  for (int c = 0; c < n_classes; ++c)
    for (int j = 0; j < dim; ++j)
      centers(c, j) = rng.uniform(-center_box, center_box);
  PointCloud cloud;
  cloud.data.resize(n, dim);
  cloud.labels.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int c = i % n_classes;
    cloud.labels[static_cast<std::size_t>(i)] = c;
    for (int j = 0; j < dim; ++j)
      cloud.data(i, j) = centers(c, j) + cluster_std * rng.normal();
  }
  return cloud;
}

}  // namespace topoembed
