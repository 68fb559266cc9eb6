#include "topoembed/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topoembed/parallel.hpp"
#include "topoembed/rng.hpp"

namespace topoembed {

namespace {

// Squared error of f(d) = 1/(1 + a d^{2b}) against the piecewise target on
// the fit grid, plus the Jacobian in (log a, log b).
struct KernelObjective {
  std::vector<double> grid;
  std::vector<double> target;

  KernelObjective(double spread, double min_dist) {
    const int m = 300;
    grid.resize(m);
    target.resize(m);
    for (int i = 0; i < m; ++i) {
      const double x = 3.0 * spread * static_cast<double>(i) / (m - 1);
      grid[static_cast<std::size_t>(i)] = x;
      target[static_cast<std::size_t>(i)] =
          x <= min_dist ? 1.0 : std::exp(-(x - min_dist) / spread);
    }
  }

  double sse(double a, double b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double f = 1.0 / (1.0 + a * std::pow(grid[i], 2.0 * b));
      const double r = f - target[i];
      s += r * r;
    }
    return s;
  }
};

}  // namespace

KernelParams fit_kernel(double spread, double min_dist) {
  if (!(spread > 0.0))
    throw InvalidInput("fit_kernel: spread must be positive");
  if (!(min_dist > 0.0 && min_dist < 10.0 * spread))
    throw InvalidInput("fit_kernel: need 0 < min_dist < 10*spread");

  const KernelObjective obj(spread, min_dist);
  const std::size_t m = obj.grid.size();

  // Optimize in (log a, log b) so positivity is built in.
  double la = 0.0, lb = 0.0;
  double lambda = 1e-3;
  double sse = obj.sse(std::exp(la), std::exp(lb));
  bool converged = false;

  for (int iter = 0; iter < 200 && !converged; ++iter) {
    const double a = std::exp(la), b = std::exp(lb);
    // Normal equations for the 2-parameter LM step.
    double h00 = 0, h01 = 0, h11 = 0, g0 = 0, g1 = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = obj.grid[i];
      const double xb = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
      const double f = 1.0 / (1.0 + a * xb);
      const double r = f - obj.target[i];
      const double df_da = -xb * f * f;
      const double df_db = x > 0.0 ? -2.0 * a * xb * std::log(x) * f * f : 0.0;
      const double j0 = df_da * a;  // d/d(log a)
      const double j1 = df_db * b;  // d/d(log b)
      h00 += j0 * j0;
      h01 += j0 * j1;
      h11 += j1 * j1;
      g0 += j0 * r;
      g1 += j1 * r;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      const double d00 = h00 + lambda * (1.0 + h00);
      const double d11 = h11 + lambda * (1.0 + h11);
      const double det = d00 * d11 - h01 * h01;
      if (det == 0.0) {
        lambda *= 4.0;
        continue;
      }
      const double step0 = (-g0 * d11 + g1 * h01) / det;
      const double step1 = (-g1 * d00 + g0 * h01) / det;
      const double trial_sse =
          obj.sse(std::exp(la + step0), std::exp(lb + step1));
      if (trial_sse <= sse) {
        la += step0;
        lb += step1;
        if (sse - trial_sse < 1e-14 &&
            std::abs(step0) + std::abs(step1) < 1e-10)
          converged = true;
        sse = trial_sse;
        lambda = std::max(lambda * 0.5, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!stepped) converged = true;  // no downhill direction left
  }

  if (!(sse < 1e10) || !std::isfinite(la) || !std::isfinite(lb))
    throw NumericalError("fit_kernel failed to converge, residual " +
                         std::to_string(sse));
  KernelParams p;
  p.a = std::exp(la);
  p.b = std::exp(lb);
  p.spread = spread;
  p.min_dist = min_dist;
  return p;
}

double attractive_gradient(double d, const KernelParams& p) {
  if (d < 0.0) throw InvalidInput("attractive_gradient: d must be >= 0");
  if (d == 0.0)
    return 2.0 * p.b > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const double pow_term = std::pow(d, 2.0 * p.b - 1.0);
  return 2.0 * p.a * p.b * pow_term / (1.0 + p.a * pow_term * d);
}

double repulsive_gradient(double d, const KernelParams& p, double eps) {
  if (d < 0.0) throw InvalidInput("repulsive_gradient: d must be >= 0");
  const double dd = std::max(d, eps);
  return -2.0 * p.b / (dd * (1.0 + p.a * std::pow(dd, 2.0 * p.b)));
}

double attractive_force(double d, const KernelParams& p, double cutoff) {
  return std::min(attractive_gradient(d, p), cutoff);
}

double repulsive_force(double d, const KernelParams& p, double eps,
                       double cutoff) {
  return std::max(repulsive_gradient(d, p, eps), -cutoff);
}

namespace {

// Stateless per-event stream: the sampled negatives depend only on
// (seed, iteration, point, slot), never on thread scheduling.
inline int sample_negative(uint64_t seed, int iter, int point, int slot,
                           int n) {
  const uint64_t h = derive_seed(seed, static_cast<uint64_t>(iter),
                                 static_cast<uint64_t>(point),
                                 static_cast<uint64_t>(slot));
  const int j = static_cast<int>(
      (static_cast<unsigned __int128>(h) * static_cast<uint64_t>(n - 1)) >> 64);
  return j + (j >= point ? 1 : 0);
}

}  // namespace

Embedding run_layout(const Embedding& initial, const std::vector<Edge>& edges,
                     const KernelParams& kernel, const LayoutConfig& config) {
  if (!initial.coords.allFinite())
    throw InvalidInput("run_layout: initial embedding has non-finite entries");
  const int n = static_cast<int>(initial.n());
  const int d = static_cast<int>(initial.dim());
  if (n < 1) throw InvalidInput("run_layout: empty embedding");
  if (config.max_iter < 0) throw InvalidInput("run_layout: negative max_iter");

  Mat coords = initial.coords;
  const bool in_place = config.n_threads <= 1;
  const std::size_t n_chunks = 64;

  // Per-chunk displacement buffers for the synchronous (parallel) mode;
  // reduced in chunk order so results do not depend on the thread count.
  std::vector<Mat> buffers;
  if (!in_place) {
    buffers.assign(n_chunks, Mat());
    for (auto& b : buffers) b = Mat::Zero(n, d);
  }

  for (int iter = 0; iter < config.max_iter; ++iter) {
    const double lr =
        config.lr_initial *
        (1.0 - static_cast<double>(iter) / static_cast<double>(config.max_iter));

    auto attract = [&](const Edge& e, Mat& target) {
      double dist2 = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = coords(e.i, c) - coords(e.j, c);
        dist2 += diff * diff;
      }
      const double dist = std::sqrt(dist2);
      if (dist <= 0.0) return;  // coincident points give no direction
      const double f = attractive_force(dist, kernel, config.cutoff);
      const double scale = lr * f / dist;
      for (int c = 0; c < d; ++c) {
        const double step = scale * (coords(e.j, c) - coords(e.i, c));
        target(e.i, c) += step;
        target(e.j, c) -= step;
      }
    };

    auto repel = [&](int i, Mat& target) {
      for (int s = 0; s < config.neg_ratio; ++s) {
        const int j = n > 1 ? sample_negative(config.seed, iter, i, s, n) : i;
        if (j == i) continue;
        double dist2 = 0.0;
        for (int c = 0; c < d; ++c) {
          const double diff = coords(i, c) - coords(j, c);
          dist2 += diff * diff;
        }
        const double dist = std::sqrt(dist2);
        const double f = repulsive_force(dist, kernel, config.eps, config.cutoff);
        const double magnitude = lr * (-f);
        if (dist > 0.0) {
          const double scale = magnitude / dist;
          for (int c = 0; c < d; ++c)
            target(i, c) += scale * (coords(i, c) - coords(j, c));
        } else {
          // Coincident pair: push along a fixed axis, sign by parity.
          target(i, 0) += ((i + j) % 2 ? magnitude : -magnitude);
        }
      }
    };

    if (in_place) {
      for (const auto& e : edges) attract(e, coords);
      for (int i = 0; i < n; ++i) repel(i, coords);
    } else {
      parallel_chunks(edges.size(), n_chunks, config.n_threads,
                      [&](std::size_t chunk, std::size_t b, std::size_t e) {
                        for (std::size_t x = b; x < e; ++x)
                          attract(edges[x], buffers[chunk]);
                      });
      parallel_chunks(static_cast<std::size_t>(n), n_chunks, config.n_threads,
                      [&](std::size_t chunk, std::size_t b, std::size_t e) {
                        for (std::size_t i = b; i < e; ++i)
                          repel(static_cast<int>(i), buffers[chunk]);
                      });
      for (auto& b : buffers) {
        coords += b;
        b.setZero();
      }
    }

    if (!coords.allFinite())
      throw NumericalError("run_layout: non-finite coordinates at iteration " +
                           std::to_string(iter));
  }
  return Embedding{std::move(coords)};
}

}  // namespace topoembed
