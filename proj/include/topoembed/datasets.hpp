#pragma once

#include <cstdint>

#include "topoembed/model.hpp"

namespace topoembed {

// Labeled Gaussian blobs: n points split across n_classes isotropic
// clusters with the given in-cluster standard deviation. Cluster centers
// are drawn uniformly in [-center_box, center_box]^dim. Deterministic
// given seed.
PointCloud make_blobs(int n, int dim, int n_classes, double cluster_std,
                      double center_box, uint64_t seed);

}  // namespace topoembed
