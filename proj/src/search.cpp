#include "topoembed/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "topoembed/knn.hpp"
#include "topoembed/parallel.hpp"
#include "topoembed/rng.hpp"
#include "topoembed/topology.hpp"

namespace topoembed {

namespace {

using MinPair = std::array<double, 2>;

bool dominates_min(const MinPair& a, const MinPair& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

std::vector<std::vector<int>> sort_fronts_min(const std::vector<MinPair>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<int> domination_count(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> dominated_by(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> fronts;
  std::vector<int> current;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates_min(f[static_cast<std::size_t>(p)],
                        f[static_cast<std::size_t>(q)]))
        dominated_by[static_cast<std::size_t>(p)].push_back(q);
      else if (dominates_min(f[static_cast<std::size_t>(q)],
                             f[static_cast<std::size_t>(p)]))
        ++domination_count[static_cast<std::size_t>(p)];
    }
    if (domination_count[static_cast<std::size_t>(p)] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<int> next;
    for (const int p : current)
      for (const int q : dominated_by[static_cast<std::size_t>(p)])
        if (--domination_count[static_cast<std::size_t>(q)] == 0)
          next.push_back(q);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_min(const std::vector<MinPair>& front) {
  const int n = static_cast<int>(front.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(static_cast<std::size_t>(n), 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  for (int obj = 0; obj < 2; ++obj) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double fa = front[static_cast<std::size_t>(a)][static_cast<std::size_t>(obj)];
      const double fb = front[static_cast<std::size_t>(b)][static_cast<std::size_t>(obj)];
      return fa < fb || (fa == fb && a < b);
    });
    distance[static_cast<std::size_t>(order.front())] = inf;
    distance[static_cast<std::size_t>(order.back())] = inf;
    const double range =
        front[static_cast<std::size_t>(order.back())][static_cast<std::size_t>(obj)] -
        front[static_cast<std::size_t>(order.front())][static_cast<std::size_t>(obj)];
    if (range <= 0.0) continue;  // degenerate objective: no contribution
    for (int i = 1; i + 1 < n; ++i) {
      const int at = order[static_cast<std::size_t>(i)];
      if (std::isinf(distance[static_cast<std::size_t>(at)])) continue;
      const double gap =
          front[static_cast<std::size_t>(order[static_cast<std::size_t>(i + 1)])]
               [static_cast<std::size_t>(obj)] -
          front[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])]
               [static_cast<std::size_t>(obj)];
      distance[static_cast<std::size_t>(at)] += gap / range;
    }
  }
  return distance;
}

MinPair to_min(const Objectives& o) { return {-o.acc, o.te}; }

}  // namespace

bool dominates(const Objectives& a, const Objectives& b) {
  return dominates_min(to_min(a), to_min(b));
}

std::vector<std::vector<int>> non_dominated_sort(
    const std::vector<Objectives>& pop) {
  if (pop.empty()) throw InvalidInput("non_dominated_sort: empty population");
  std::vector<MinPair> f;
  f.reserve(pop.size());
  for (const auto& o : pop) f.push_back(to_min(o));
  return sort_fronts_min(f);
}

std::vector<double> crowding_distance(const std::vector<Objectives>& front) {
  if (front.empty()) throw InvalidInput("crowding_distance: empty front");
  std::vector<MinPair> f;
  f.reserve(front.size());
  for (const auto& o : front) f.push_back(to_min(o));
  return crowding_min(f);
}

namespace nsga2 {

namespace {

// Internal gene representation: Real/Int use the value range directly,
// LogReal stores the log of the value, Cat stores the category index.
double stored_lo(const Gene& g) {
  switch (g.kind) {
    case Gene::Kind::LogReal: return std::log(g.lo);
    case Gene::Kind::Cat: return 0.0;
    default: return g.lo;
  }
}

double stored_hi(const Gene& g) {
  switch (g.kind) {
    case Gene::Kind::LogReal: return std::log(g.hi);
    case Gene::Kind::Cat: return static_cast<double>(g.n_cat - 1);
    default: return g.hi;
  }
}

double decode_gene(const Gene& g, double stored) {
  switch (g.kind) {
    case Gene::Kind::Real: return stored;
    case Gene::Kind::LogReal: return std::exp(stored);
    case Gene::Kind::Int: return std::round(stored);
    case Gene::Kind::Cat: return std::round(stored);
  }
  return stored;
}

double sample_gene(const Gene& g, Rng& rng) {
  if (g.kind == Gene::Kind::Cat)
    return static_cast<double>(rng.below(static_cast<uint64_t>(g.n_cat)));
  return rng.uniform(stored_lo(g), stored_hi(g));
}

double clamp(double x, double lo, double hi) {
  return std::min(hi, std::max(lo, x));
}

// Bounded simulated binary crossover on one gene.
void sbx_gene(const Gene& g, double eta, Rng& rng, double& x1, double& x2) {
  if (g.kind == Gene::Kind::Cat) {
    if (rng.uniform() < 0.5) std::swap(x1, x2);
    return;
  }
  const double lo = stored_lo(g), hi = stored_hi(g);
  if (rng.uniform() > 0.5) return;
  if (std::abs(x1 - x2) < 1e-14) return;
  double y1 = std::min(x1, x2), y2 = std::max(x1, x2);
  const double u = rng.uniform();
  auto spread_factor = [&](double beta) {
    const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    return u <= 1.0 / alpha
               ? std::pow(u * alpha, 1.0 / (eta + 1.0))
               : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
  };
  const double beta1 = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
  const double beta2 = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
  const double c1 = 0.5 * ((y1 + y2) - spread_factor(beta1) * (y2 - y1));
  const double c2 = 0.5 * ((y1 + y2) + spread_factor(beta2) * (y2 - y1));
  x1 = clamp(c1, lo, hi);
  x2 = clamp(c2, lo, hi);
  if (rng.uniform() < 0.5) std::swap(x1, x2);
}

// Bounded polynomial mutation on one gene.
void mutate_gene(const Gene& g, double eta, Rng& rng, double& x) {
  if (g.kind == Gene::Kind::Cat) {
    x = static_cast<double>(rng.below(static_cast<uint64_t>(g.n_cat)));
    return;
  }
  const double lo = stored_lo(g), hi = stored_hi(g);
  if (hi <= lo) return;
  const double u = rng.uniform();
  const double delta1 = (x - lo) / (hi - lo);
  const double delta2 = (hi - x) / (hi - lo);
  double deltaq;
  if (u < 0.5) {
    const double val =
        2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
    deltaq = std::pow(val, 1.0 / (eta + 1.0)) - 1.0;
  } else {
    const double val = 2.0 * (1.0 - u) +
                       2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
    deltaq = 1.0 - std::pow(val, 1.0 / (eta + 1.0));
  }
  x = clamp(x + deltaq * (hi - lo), lo, hi);
}

struct Ranked {
  int rank = 0;
  double crowding = 0.0;
};

std::vector<Ranked> rank_population(const std::vector<MinPair>& objs) {
  const auto fronts = sort_fronts_min(objs);
  std::vector<Ranked> ranked(objs.size());
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    std::vector<MinPair> sub;
    sub.reserve(fronts[r].size());
    for (const int i : fronts[r]) sub.push_back(objs[static_cast<std::size_t>(i)]);
    const auto crowd = crowding_min(sub);
    for (std::size_t s = 0; s < fronts[r].size(); ++s) {
      ranked[static_cast<std::size_t>(fronts[r][s])] = {static_cast<int>(r),
                                                        crowd[s]};
    }
  }
  return ranked;
}

}  // namespace

RunResult run(const std::vector<Gene>& space, const Evaluator& evaluate,
              const Options& options) {
  if (space.empty()) throw InvalidInput("nsga2: empty gene space");
  if (options.pop_size < 2) throw InvalidInput("nsga2: population too small");
  if (options.n_trials < options.pop_size)
    throw InvalidInput("nsga2: budget smaller than the population");

  Rng rng(derive_seed(options.seed, hash_name("nsga2")));
  const std::size_t n_genes = space.size();

  RunResult result;
  auto decode = [&](const std::vector<double>& stored) {
    std::vector<double> out(n_genes);
    for (std::size_t g = 0; g < n_genes; ++g)
      out[g] = decode_gene(space[g], stored[g]);
    return out;
  };

  // Evaluate a batch concurrently; trial seeds hang off the trial index so
  // results do not depend on scheduling.
  auto evaluate_batch = [&](const std::vector<std::vector<double>>& batch,
                            int first_index) {
    std::vector<EvalOutcome> outcomes(batch.size());
    parallel_for(batch.size(), options.n_workers, [&](std::size_t b) {
      const int index = first_index + static_cast<int>(b);
      const uint64_t trial_seed =
          derive_seed(options.seed, hash_name("trial"),
                      static_cast<uint64_t>(index));
      try {
        outcomes[b] = evaluate(decode(batch[b]), index, trial_seed);
      } catch (const std::exception&) {
        outcomes[b] = EvalOutcome{{0.0, 1000.0}, false};
      }
    });
    for (std::size_t b = 0; b < batch.size(); ++b) {
      result.decoded.push_back(decode(batch[b]));
      result.objectives.push_back(outcomes[b].f);
      result.ok.push_back(outcomes[b].ok);
    }
    return outcomes;
  };

  std::vector<std::vector<double>> pop_genes;
  std::vector<MinPair> pop_objs;
  pop_genes.reserve(static_cast<std::size_t>(options.pop_size));
  for (int i = 0; i < options.pop_size; ++i) {
    std::vector<double> genes(n_genes);
    for (std::size_t g = 0; g < n_genes; ++g) genes[g] = sample_gene(space[g], rng);
    pop_genes.push_back(std::move(genes));
  }
  for (const auto& outcome : evaluate_batch(pop_genes, 0))
    pop_objs.push_back(outcome.f);
  int evals = options.pop_size;

  while (evals < options.n_trials) {
    const int batch_size = std::min(options.pop_size, options.n_trials - evals);
    const auto ranked = rank_population(pop_objs);
    auto tournament = [&]() -> int {
      const int a = static_cast<int>(rng.below(pop_genes.size()));
      const int b = static_cast<int>(rng.below(pop_genes.size()));
      const auto& ra = ranked[static_cast<std::size_t>(a)];
      const auto& rb = ranked[static_cast<std::size_t>(b)];
      if (ra.rank != rb.rank) return ra.rank < rb.rank ? a : b;
      if (ra.crowding != rb.crowding) return ra.crowding > rb.crowding ? a : b;
      return a;
    };

    std::vector<std::vector<double>> offspring;
    offspring.reserve(static_cast<std::size_t>(batch_size));
    while (static_cast<int>(offspring.size()) < batch_size) {
      std::vector<double> c1 = pop_genes[static_cast<std::size_t>(tournament())];
      std::vector<double> c2 = pop_genes[static_cast<std::size_t>(tournament())];
      if (rng.uniform() < options.p_crossover)
        for (std::size_t g = 0; g < n_genes; ++g)
          sbx_gene(space[g], options.eta_crossover, rng, c1[g], c2[g]);
      const double p_mut = 1.0 / static_cast<double>(n_genes);
      for (auto* child : {&c1, &c2})
        for (std::size_t g = 0; g < n_genes; ++g)
          if (rng.uniform() < p_mut)
            mutate_gene(space[g], options.eta_mutation, rng, (*child)[g]);
      offspring.push_back(std::move(c1));
      if (static_cast<int>(offspring.size()) < batch_size)
        offspring.push_back(std::move(c2));
    }

    const auto outcomes = evaluate_batch(offspring, evals);
    evals += batch_size;

    // Elitist environmental selection over parents + offspring.
    std::vector<std::vector<double>> all_genes = pop_genes;
    std::vector<MinPair> all_objs = pop_objs;
    for (std::size_t b = 0; b < offspring.size(); ++b) {
      all_genes.push_back(offspring[b]);
      all_objs.push_back(outcomes[b].f);
    }
    const auto fronts = sort_fronts_min(all_objs);
    std::vector<std::vector<double>> next_genes;
    std::vector<MinPair> next_objs;
    for (const auto& front : fronts) {
      if (static_cast<int>(next_genes.size()) >= options.pop_size) break;
      const int room = options.pop_size - static_cast<int>(next_genes.size());
      std::vector<int> chosen = front;
      if (static_cast<int>(front.size()) > room) {
        std::vector<MinPair> sub;
        sub.reserve(front.size());
        for (const int i : front) sub.push_back(all_objs[static_cast<std::size_t>(i)]);
        const auto crowd = crowding_min(sub);
        std::vector<int> order(front.size());
        for (std::size_t i = 0; i < front.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          if (crowd[static_cast<std::size_t>(a)] != crowd[static_cast<std::size_t>(b)])
            return crowd[static_cast<std::size_t>(a)] > crowd[static_cast<std::size_t>(b)];
          return front[static_cast<std::size_t>(a)] < front[static_cast<std::size_t>(b)];
        });
        chosen.clear();
        for (int i = 0; i < room; ++i)
          chosen.push_back(front[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
      }
      for (const int i : chosen) {
        next_genes.push_back(all_genes[static_cast<std::size_t>(i)]);
        next_objs.push_back(all_objs[static_cast<std::size_t>(i)]);
      }
    }
    pop_genes = std::move(next_genes);
    pop_objs = std::move(next_objs);
  }

  // Final front over every ok trial of the study.
  std::vector<int> ok_index;
  std::vector<MinPair> ok_objs;
  for (std::size_t i = 0; i < result.objectives.size(); ++i)
    if (result.ok[i]) {
      ok_index.push_back(static_cast<int>(i));
      ok_objs.push_back(result.objectives[i]);
    }
  if (!ok_objs.empty()) {
    const auto fronts = sort_fronts_min(ok_objs);
    for (const int i : fronts.front())
      result.front.push_back(ok_index[static_cast<std::size_t>(i)]);
    std::sort(result.front.begin(), result.front.end());
  }
  return result;
}

}  // namespace nsga2

DireConfig TrialParams::to_config() const {
  DireConfig cfg;
  cfg.init = init;
  cfg.n_neighbors = n_neighbors;
  cfg.cutoff = cutoff;
  cfg.spread = spread;
  cfg.min_dist = min_dist;
  cfg.neg_ratio = neg_ratio;
  cfg.max_iter = max_iter;
  return cfg;
}

std::vector<nsga2::Gene> dire_search_space() {
  using nsga2::Gene;
  return {
      Gene::categorical(4),        // init: pca, spectral, diffusion, jl
      Gene::integer(8, 48),        // n_neighbors
      Gene::real(2.0, 42.0),       // cutoff
      Gene::real(0.5, 4.0),        // spread
      Gene::log_real(1e-4, 1e-1),  // min_dist
      Gene::integer(2, 32),        // neg_ratio
      Gene::integer(64, 256),      // layout iterations
  };
}

TrialParams decode_trial_params(const std::vector<double>& decoded) {
  if (decoded.size() != 7)
    throw InvalidInput("decode_trial_params: expected 7 genes");
  TrialParams params;
  params.init = static_cast<InitKind>(static_cast<int>(decoded[0]));
  params.n_neighbors = static_cast<int>(decoded[1]);
  params.cutoff = decoded[2];
  params.spread = decoded[3];
  params.min_dist = decoded[4];
  params.neg_ratio = static_cast<int>(decoded[5]);
  params.max_iter = static_cast<int>(decoded[6]);
  return params;
}

DireEvaluator::DireEvaluator(PointCloud dataset,
                             std::vector<StressManifold> stress_set,
                             uint64_t seed)
    : stress_set_(std::move(stress_set)), seed_(seed) {
  dataset.validate();
  if (!dataset.has_labels())
    throw InvalidInput("DireEvaluator: dataset must carry labels");
  labels_ = dataset.labels;
  normalized_ = normalize_input(dataset);
}

const NeighborGraph& DireEvaluator::graph_for(int k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = graph_cache_.find(k);
  if (it == graph_cache_.end()) {
    auto graph = std::make_unique<NeighborGraph>(build_knn(normalized_, k));
    it = graph_cache_.emplace(k, std::move(graph)).first;
  }
  return *it->second;
}

Objectives DireEvaluator::evaluate(const TrialParams& params,
                                   uint64_t trial_seed) const {
  const DireConfig cfg = params.to_config();
  const NeighborGraph& graph = graph_for(params.n_neighbors);
  const Embedding initial = dire_init(normalized_, graph, cfg, trial_seed);

  LayoutConfig layout;
  layout.cutoff = cfg.cutoff;
  layout.neg_ratio = cfg.neg_ratio;
  layout.max_iter = cfg.max_iter;
  layout.seed = derive_seed(trial_seed, hash_name("layout"));
  const Embedding embedded =
      run_layout(initial, symmetrized_edges(graph),
                 fit_kernel(cfg.spread, cfg.min_dist), layout);

  SplitSpec split;
  split.seed = derive_seed(seed_, hash_name("split"));
  const double acc = knn_accuracy(embedded, labels_, 15, split);

  const uint64_t embed_seed = derive_seed(trial_seed, hash_name("te"));
  const int te = topology_error(
      [&](const PointCloud& sample) {
        return dire_embed(sample, cfg, embed_seed);
      },
      stress_set_, seed_);
  return Objectives{acc, static_cast<double>(te)};
}

Study nsga2_run(const DireEvaluator& evaluator, const SearchOptions& options) {
  nsga2::Options engine;
  engine.pop_size = options.pop_size;
  engine.n_trials = options.n_trials;
  engine.seed = options.seed;
  engine.n_workers = options.n_workers;

  std::vector<double> times(static_cast<std::size_t>(options.n_trials), 0.0);
  const auto result = nsga2::run(
      dire_search_space(),
      [&](const std::vector<double>& decoded, int index, uint64_t trial_seed) {
        const auto start = std::chrono::steady_clock::now();
        const Objectives obj =
            evaluator.evaluate(decode_trial_params(decoded), trial_seed);
        const auto stop = std::chrono::steady_clock::now();
        times[static_cast<std::size_t>(index)] =
            std::chrono::duration<double, std::milli>(stop - start).count();
        return nsga2::EvalOutcome{{-obj.acc, obj.te}, true};
      },
      engine);

  Study study;
  study.trials.reserve(result.decoded.size());
  for (std::size_t i = 0; i < result.decoded.size(); ++i) {
    Trial trial;
    trial.params = decode_trial_params(result.decoded[i]);
    trial.objectives = Objectives{-result.objectives[i][0],
                                  result.objectives[i][1]};
    trial.ok = result.ok[i];
    trial.time_ms = times[i];
    study.trials.push_back(trial);
  }
  study.front = result.front;
  return study;
}

std::vector<int> pareto_front(const std::vector<Trial>& trials) {
  std::vector<int> ok_index;
  for (std::size_t i = 0; i < trials.size(); ++i)
    if (trials[i].ok) ok_index.push_back(static_cast<int>(i));
  if (ok_index.empty())
    throw InvalidInput("pareto_front: no successful trials");
  std::vector<int> front;
  for (const int i : ok_index) {
    bool dominated = false;
    for (const int j : ok_index) {
      if (i != j && dominates(trials[static_cast<std::size_t>(j)].objectives,
                              trials[static_cast<std::size_t>(i)].objectives)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(i);
  }
  return front;
}

int count_strictly_dominating(const std::vector<Trial>& trials,
                              const std::vector<int>& front,
                              const Objectives& reference) {
  int count = 0;
  for (const int i : front) {
    const auto& o = trials[static_cast<std::size_t>(i)].objectives;
    if (o.acc > reference.acc && o.te < reference.te) ++count;
  }
  return count;
}

}  // namespace topoembed
