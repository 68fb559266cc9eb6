#include "topoembed/pipeline.hpp"

#include "topoembed/rng.hpp"

namespace topoembed {

DireConfig topology_tuned_preset() {
  DireConfig cfg;
  cfg.init = InitKind::Spectral;
  cfg.n_neighbors = 16;
  cfg.spread = 3.0;
  cfg.min_dist = 0.01;
  cfg.max_iter = 200;
  cfg.neg_ratio = 8;
  cfg.cutoff = 4.0;
  return cfg;
}

Embedding dire_init(const PointCloud& normalized, const NeighborGraph& graph,
                    const DireConfig& config, uint64_t seed) {
  Embedding embedding;
  switch (config.init) {
    case InitKind::Pca:
      embedding = init_pca(normalized, config.dim);
      break;
    case InitKind::Spectral:
      embedding = init_spectral(graph, config.dim, config.eig_tol,
                                config.eig_max_iter);
      break;
    case InitKind::Diffusion:
      embedding = init_diffusion(graph, config.dim, config.diffusion_time,
                                 config.eig_tol, config.eig_max_iter);
      break;
    case InitKind::Jl:
      embedding =
          init_jl(normalized, config.dim, derive_seed(seed, hash_name("init")));
      break;
  }
  // Bring every initializer to a common coordinate scale for the layout.
  const double max_abs = embedding.coords.cwiseAbs().maxCoeff();
  if (max_abs > 0) embedding.coords /= max_abs;
  return embedding;
}

Embedding dire_embed(const PointCloud& cloud, const DireConfig& config,
                     uint64_t seed, unsigned n_threads) {
  if (config.dim != 2 && config.dim != 3)
    throw InvalidInput("dire_embed: target dimension must be 2 or 3");
  const PointCloud normalized = normalize_input(cloud);
  const NeighborGraph graph =
      build_knn(normalized, config.n_neighbors, n_threads);
  const Embedding initial = dire_init(normalized, graph, config, seed);

  LayoutConfig layout;
  layout.cutoff = config.cutoff;
  layout.neg_ratio = config.neg_ratio;
  layout.max_iter = config.max_iter;
  layout.lr_initial = config.lr_initial;
  layout.seed = derive_seed(seed, hash_name("layout"));
  layout.n_threads = n_threads;
  return run_layout(initial, symmetrized_edges(graph),
                    fit_kernel(config.spread, config.min_dist), layout);
}

}  // namespace topoembed
