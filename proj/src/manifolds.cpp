#include "topoembed/manifolds.hpp"

#include <cmath>

#include "topoembed/rng.hpp"

namespace topoembed {

PointCloud sample_figure8(int n, double sigma, uint64_t seed) {
  if (n < 1) throw InvalidInput("figure8: need n >= 1");
  if (sigma < 0) throw InvalidInput("figure8: sigma must be >= 0");
  Rng rng(seed);
  PointCloud cloud;
  cloud.data.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(0.0, 2.0 * M_PI);
    // Noise deviates are drawn unconditionally so the same seed traces the
    // same curve parameters at every noise level.
    const double x = std::sin(t) + sigma * rng.normal();
    const double y = std::sin(t) * std::cos(t) + sigma * rng.normal();
    cloud.data(i, 0) = x;
    cloud.data(i, 1) = y;
  }
  return cloud;
}

PointCloud sample_torus(int n, double R, double r, double sigma, uint64_t seed) {
  if (n < 1) throw InvalidInput("torus: need n >= 1");
  if (sigma < 0) throw InvalidInput("torus: sigma must be >= 0");
  if (!(R > r && r > 0))
    throw InvalidInput("torus: invalid geometry, need R > r > 0");
  Rng rng(seed);
  PointCloud cloud;
  cloud.data.resize(n, 3);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(0.0, 2.0 * M_PI);
    const double v = rng.uniform(0.0, 2.0 * M_PI);
    const double x = (R + r * std::cos(v)) * std::cos(u) + sigma * rng.normal();
    const double y = (R + r * std::cos(v)) * std::sin(u) + sigma * rng.normal();
    const double z = r * std::sin(v) + sigma * rng.normal();
    cloud.data(i, 0) = x;
    cloud.data(i, 1) = y;
    cloud.data(i, 2) = z;
  }
  return cloud;
}

PointCloud sample_manifold(const StressManifold& m, uint64_t seed) {
  switch (m.kind) {
    case StressManifold::Kind::Figure8:
      return sample_figure8(m.n_points, m.sigma, seed);
    case StressManifold::Kind::Torus:
      return sample_torus(m.n_points, m.torus_R, m.torus_r, m.sigma, seed);
  }
  throw InvalidInput("unknown manifold kind");
}

std::vector<StressManifold> default_stress_set() {
  StressManifold fig8;
  fig8.kind = StressManifold::Kind::Figure8;
  fig8.sigma = 0.2;
  StressManifold torus;
  torus.kind = StressManifold::Kind::Torus;
  torus.sigma = 0.05;
  return {fig8, torus};
}

}  // namespace topoembed
