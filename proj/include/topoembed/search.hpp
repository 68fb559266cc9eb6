#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "topoembed/manifolds.hpp"
#include "topoembed/metrics.hpp"
#include "topoembed/model.hpp"
#include "topoembed/pipeline.hpp"

namespace topoembed {

// Study objectives: classification accuracy is maximized, topology error
// minimized.
struct Objectives {
  double acc = 0.0;
  double te = 0.0;
};

// True iff a is no worse than b on both objectives and better on at least
// one.
bool dominates(const Objectives& a, const Objectives& b);

// Fast non-dominated sort; front 0 is the non-dominated set, front i the
// non-dominated set once fronts 0..i-1 are removed.
std::vector<std::vector<int>> non_dominated_sort(
    const std::vector<Objectives>& pop);

// NSGA-II crowding distance within one front: boundary points per
// objective get +infinity, interior points the normalized neighbor-gap
// sum. A zero objective range contributes 0 to interior points.
std::vector<double> crowding_distance(const std::vector<Objectives>& front);

// Generic two-objective NSGA-II engine (both objectives minimized).
namespace nsga2 {

struct Gene {
  enum class Kind { Real, LogReal, Int, Cat };
  Kind kind = Kind::Real;
  double lo = 0.0, hi = 1.0;  // value bounds (LogReal: bounds of the value)
  int n_cat = 0;

  static Gene real(double lo, double hi) { return {Kind::Real, lo, hi, 0}; }
  static Gene log_real(double lo, double hi) {
    return {Kind::LogReal, lo, hi, 0};
  }
  static Gene integer(int lo, int hi) {
    return {Kind::Int, static_cast<double>(lo), static_cast<double>(hi), 0};
  }
  static Gene categorical(int n) { return {Kind::Cat, 0.0, 0.0, n}; }
};

struct Options {
  int pop_size = 25;
  int n_trials = 150;  // total evaluation budget, initial population included
  uint64_t seed = 0;
  unsigned n_workers = 1;
  double eta_crossover = 15.0;
  double eta_mutation = 20.0;
  double p_crossover = 0.9;
};

struct EvalOutcome {
  std::array<double, 2> f{0.0, 0.0};
  bool ok = true;
};

// decoded genes: Real/LogReal give the value, Int a rounded value, Cat the
// category index.
using Evaluator = std::function<EvalOutcome(const std::vector<double>& decoded,
                                            int trial_index,
                                            uint64_t trial_seed)>;

struct RunResult {
  std::vector<std::vector<double>> decoded;     // per trial, evaluation order
  std::vector<std::array<double, 2>> objectives;
  std::vector<bool> ok;
  std::vector<int> front;  // indices of the final non-dominated ok trials
};

// Evaluator exceptions mark the trial failed with worst-case objectives
// {0, 1e3} ... callers may prefer to encode failures themselves via
// EvalOutcome::ok. Deterministic given seed; trials within a batch may be
// evaluated concurrently (trial seeds depend only on the trial index).
RunResult run(const std::vector<Gene>& space, const Evaluator& evaluate,
              const Options& options);

}  // namespace nsga2

// One evaluated configuration of the embedding pipeline.
struct TrialParams {
  InitKind init = InitKind::Spectral;
  int n_neighbors = 16;
  double cutoff = 4.0;
  double spread = 1.0;
  double min_dist = 0.1;
  int neg_ratio = 8;
  int max_iter = 128;

  DireConfig to_config() const;
};

struct Trial {
  TrialParams params;
  Objectives objectives;
  bool ok = true;
  double time_ms = 0.0;
};

struct Study {
  std::vector<Trial> trials;
  std::vector<int> front;  // indices into trials
};

// Hyperparameter box of the study.
std::vector<nsga2::Gene> dire_search_space();
TrialParams decode_trial_params(const std::vector<double>& decoded);

struct SearchOptions {
  int pop_size = 25;
  int n_trials = 150;
  uint64_t seed = 0;
  unsigned n_workers = 1;
};

// Objective evaluation for one dataset: embed with the trial's parameters,
// score kNN accuracy (k=15, fixed 70/30 stratified split) and the
// topology error over the stress set. The dataset kNN graph is cached per
// n_neighbors across trials. Thread-safe.
class DireEvaluator {
 public:
  DireEvaluator(PointCloud dataset, std::vector<StressManifold> stress_set,
                uint64_t seed);

  Objectives evaluate(const TrialParams& params, uint64_t trial_seed) const;

 private:
  const NeighborGraph& graph_for(int k) const;

  PointCloud normalized_;
  std::vector<int> labels_;
  std::vector<StressManifold> stress_set_;
  uint64_t seed_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<NeighborGraph>> graph_cache_;
};

// Full study over the hyperparameter box.
Study nsga2_run(const DireEvaluator& evaluator, const SearchOptions& options);

// Maximal non-dominated subset of the ok trials (trials equal on both
// objectives are all kept).
std::vector<int> pareto_front(const std::vector<Trial>& trials);

// How many of the listed front members beat the reference on both axes
// strictly.
int count_strictly_dominating(const std::vector<Trial>& trials,
                              const std::vector<int>& front,
                              const Objectives& reference);

}  // namespace topoembed
