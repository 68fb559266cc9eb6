#pragma once

#include <cstdint>

#include "topoembed/init.hpp"
#include "topoembed/layout.hpp"
#include "topoembed/model.hpp"

namespace topoembed {

// Full hyperparameter set of the embedding pipeline:
// normalize -> exact kNN -> initialization -> force-directed layout.
struct DireConfig {
  InitKind init = InitKind::Spectral;
  int n_neighbors = 16;
  double cutoff = 4.0;
  double spread = 1.0;
  double min_dist = 0.1;
  int neg_ratio = 8;
  int max_iter = 128;
  int dim = 2;
  double lr_initial = 1.0;
  double eig_tol = 1e-6;
  int eig_max_iter = 500;
  double diffusion_time = 1.0;
};

// The topology-tuned preset: spectral initialization with a widened kernel
// (spread 3.0 vs the 1.0 default), 200 layout iterations, 16 neighbors.
DireConfig topology_tuned_preset();

// Runs the three-stage pipeline. The seed fans out to the stages that draw
// randomness (initialization, layout). threads > 1 parallelizes the kNN
// scan and switches the layout to synchronous accumulate-then-apply
// updates; threads == 1 is the bit-reproducible reference.
Embedding dire_embed(const PointCloud& cloud, const DireConfig& config,
                     uint64_t seed, unsigned n_threads = 1);

// The initialization + rescale steps only (post-kNN), exposed for reuse.
Embedding dire_init(const PointCloud& normalized, const NeighborGraph& graph,
                    const DireConfig& config, uint64_t seed);

}  // namespace topoembed
