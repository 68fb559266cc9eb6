#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topoembed/model.hpp"

namespace topoembed {

// Test manifolds with known first Betti number (2 for both kinds).
struct StressManifold {
  enum class Kind { Figure8, Torus };
  Kind kind = Kind::Figure8;
  int n_points = 1000;
  double sigma = 0.0;
  int true_beta1 = 2;
  double torus_R = 2.0;
  double torus_r = 1.0;

  std::string name() const {
    return kind == Kind::Figure8 ? "figure8" : "torus";
  }
};

// Lemniscate of Gerono in the plane: x = sin t, y = sin t cos t, with
// iid Gaussian noise per coordinate. t is sampled uniformly on [0, 2pi).
PointCloud sample_figure8(int n, double sigma, uint64_t seed);

// Standard torus in R^3 with tube radius r around a circle of radius R,
// (u, v) uniform on [0, 2pi)^2, plus iid Gaussian noise per coordinate.
PointCloud sample_torus(int n, double R, double r, double sigma, uint64_t seed);

PointCloud sample_manifold(const StressManifold& m, uint64_t seed);

// The fixed pair used for the topology objective:
// figure-8 at sigma = 0.2 and torus (R=2, r=1) at sigma = 0.05, 1000 points.
std::vector<StressManifold> default_stress_set();

}  // namespace topoembed
