#pragma once

#include <cstdint>
#include <vector>

#include "topoembed/knn.hpp"
#include "topoembed/model.hpp"

namespace topoembed {

// Parameters of the pair kernel 1/(1 + a d^{2b}), together with the
// (spread, min_dist) pair they were fitted from.
struct KernelParams {
  double a = 1.0;
  double b = 1.0;
  double spread = 1.0;
  double min_dist = 0.1;
};

// Least-squares fit of (a, b) so that 1/(1 + a d^{2b}) tracks the target
// curve: 1 for d <= min_dist, exp(-(d - min_dist)/spread) beyond it,
// sampled on a 300-point uniform grid over [0, 3*spread]. Levenberg-
// Marquardt in log-parameter space; throws NumericalError on
// non-convergence (with the final residual in the message).
KernelParams fit_kernel(double spread, double min_dist);

// d/dd of log(1 + a d^{2b}): the pull magnitude along an attraction edge.
// Zero at d = 0 for b > 1/2; the unclamped value diverges there otherwise.
double attractive_gradient(double d, const KernelParams& p);

// d/dd of -log(a d^{2b} / (1 + a d^{2b})), with d floored at eps to bound
// the singularity. Negative: points push apart.
double repulsive_gradient(double d, const KernelParams& p, double eps);

// Gradients clamped to the bounded-kernel cutoff (a force-magnitude clamp
// in embedding units).
double attractive_force(double d, const KernelParams& p, double cutoff);
double repulsive_force(double d, const KernelParams& p, double eps,
                       double cutoff);

struct LayoutConfig {
  double cutoff = 4.0;       // per-interaction force magnitude clamp
  int neg_ratio = 8;         // negative samples per point per iteration
  int max_iter = 128;
  uint64_t seed = 0;
  double lr_initial = 1.0;   // decays linearly to 0
  double eps = 1e-3;         // repulsion singularity floor
  unsigned n_threads = 1;    // 1 = in-place updates (bit-reproducible)
};

// Force-directed refinement. Every iteration pulls the endpoints of each
// attraction edge together and pushes every point away from neg_ratio
// uniformly sampled other points (self excluded; sampling is stateless in
// (seed, iteration, point, slot), so it does not depend on the thread
// count). Single-threaded mode applies updates in place; multi-threaded
// mode accumulates per-chunk displacements and applies them at the end of
// the iteration. Throws NumericalError if coordinates go non-finite,
// naming the iteration.
Embedding run_layout(const Embedding& initial, const std::vector<Edge>& edges,
                     const KernelParams& kernel, const LayoutConfig& config);

}  // namespace topoembed
