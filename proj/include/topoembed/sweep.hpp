#pragma once

#include <cstdint>
#include <vector>

#include "topoembed/pipeline.hpp"

namespace topoembed {

// One row of the figure-8 noise sweep: mean significant H1 bar count over
// the seeds, for the raw noisy sample and for the two embedding variants.
struct NoiseSweepRow {
  double sigma = 0.0;
  double raw_mean = 0.0;
  double pca_mean = 0.0;
  double spectral_mean = 0.0;
};

struct NoiseSweepOptions {
  std::vector<double> sigmas{0.01, 0.02, 0.05, 0.10, 0.20};
  int n_seeds = 10;
  int n_points = 1000;
  uint64_t seed = 0;
  unsigned n_threads = 1;
  DireConfig base;  // init is overridden per variant
};

std::vector<NoiseSweepRow> noise_sweep(const NoiseSweepOptions& options);

}  // namespace topoembed
