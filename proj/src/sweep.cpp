#include "topoembed/sweep.hpp"

#include "topoembed/manifolds.hpp"
#include "topoembed/parallel.hpp"
#include "topoembed/rng.hpp"
#include "topoembed/topology.hpp"

namespace topoembed {

std::vector<NoiseSweepRow> noise_sweep(const NoiseSweepOptions& options) {
  const std::size_t n_sigmas = options.sigmas.size();
  const std::size_t n_tasks =
      n_sigmas * static_cast<std::size_t>(options.n_seeds);
  // Three counts per (sigma, seed) task: raw sample, pca, spectral.
  std::vector<std::array<int, 3>> counts(n_tasks);

  parallel_for(n_tasks, options.n_threads, [&](std::size_t task) {
    const std::size_t s = task / static_cast<std::size_t>(options.n_seeds);
    const int rep = static_cast<int>(task % static_cast<std::size_t>(options.n_seeds));
    const double sigma = options.sigmas[s];
    const uint64_t sample_seed =
        derive_seed(options.seed, hash_name("sweep"), s, static_cast<uint64_t>(rep));
    const PointCloud sample =
        sample_figure8(options.n_points, sigma, sample_seed);

    const auto raw = rips_persistence(sample, 1);
    counts[task][0] = significant_bars(raw, 1, 0.3);

    for (int variant = 0; variant < 2; ++variant) {
      DireConfig cfg = options.base;
      cfg.init = variant == 0 ? InitKind::Pca : InitKind::Spectral;
      const Embedding embedded =
          dire_embed(sample, cfg, derive_seed(sample_seed, hash_name("embed"),
                                              static_cast<uint64_t>(variant)));
      const auto diagram = rips_persistence(embedded.coords, 1);
      counts[task][static_cast<std::size_t>(variant) + 1] =
          significant_bars(diagram, 1, 0.3);
    }
  });

  std::vector<NoiseSweepRow> rows(n_sigmas);
  for (std::size_t s = 0; s < n_sigmas; ++s) {
    NoiseSweepRow& row = rows[s];
    row.sigma = options.sigmas[s];
    for (int rep = 0; rep < options.n_seeds; ++rep) {
      const auto& c =
          counts[s * static_cast<std::size_t>(options.n_seeds) +
                 static_cast<std::size_t>(rep)];
      row.raw_mean += c[0];
      row.pca_mean += c[1];
      row.spectral_mean += c[2];
    }
    row.raw_mean /= options.n_seeds;
    row.pca_mean /= options.n_seeds;
    row.spectral_mean /= options.n_seeds;
  }
  return rows;
}

}  // namespace topoembed
