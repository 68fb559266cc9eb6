// topoembed: force-directed embedding with a topology evaluation stack.
//
// Subcommands: embed, stress, betti, eval, noise-sweep, pareto, plot.
// Every run writes a JSON manifest next to its output with the resolved
// configuration, seeds and stage timings. Exit codes: 0 success, 2 usage or
// input error, 3 numerical failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "topoembed/datasets.hpp"
#include "topoembed/io.hpp"
#include "topoembed/manifolds.hpp"
#include "topoembed/metrics.hpp"
#include "topoembed/model.hpp"
#include "topoembed/pipeline.hpp"
#include "topoembed/rng.hpp"
#include "topoembed/search.hpp"
#include "topoembed/svg.hpp"
#include "topoembed/sweep.hpp"
#include "topoembed/topology.hpp"
#include "topoembed/parallel.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace topoembed;

constexpr const char* kVersion = "0.1.0";

// Tracks the pipeline stage for error attribution and collects wall-clock
// timings for the manifest.
struct RunContext {
  std::string stage = "startup";
  json timings = json::object();

  template <class F>
  auto run(const std::string& name, F&& fn) {
    stage = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        timings[name] = elapsed_ms(start);
      } else {
        auto result = fn();
        timings[name] = elapsed_ms(start);
        return result;
      }
    } catch (const NumericalError& e) {
      throw NumericalError("[stage " + name + "] " + e.what());
    } catch (const InvalidInput& e) {
      throw InvalidInput("[stage " + name + "] " + e.what());
    }
  }

  static double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

unsigned resolve_threads(int flag_value) {
  if (flag_value > 0) return static_cast<unsigned>(flag_value);
  if (const char* env = std::getenv("TOPOEMBED_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return default_threads();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open file for writing: " + path);
  out << text;
}

void write_manifest(const std::string& command, const std::string& out_path,
                    const json& config, uint64_t seed, unsigned threads,
                    RunContext& ctx, const std::string& manifest_path) {
  json manifest;
  manifest["command"] = command;
  manifest["version"] = kVersion;
  manifest["seed"] = seed;
  manifest["threads"] = threads;
  manifest["config"] = config;
  manifest["output"] = out_path;
  manifest["timings_ms"] = ctx.timings;
  const std::string path =
      manifest_path.empty() ? out_path + ".manifest.json" : manifest_path;
  write_text(path, manifest.dump(2) + "\n");
}

json config_to_json(const DireConfig& cfg) {
  return json{{"init", init_kind_name(cfg.init)},
              {"n_neighbors", cfg.n_neighbors},
              {"cutoff", cfg.cutoff},
              {"spread", cfg.spread},
              {"min_dist", cfg.min_dist},
              {"neg_ratio", cfg.neg_ratio},
              {"max_iter", cfg.max_iter},
              {"dim", cfg.dim},
              {"lr_initial", cfg.lr_initial}};
}

// ---------------------------------------------------------------- embed

struct EmbedArgs {
  std::string in, out, manifest, init = "spectral", preset;
  bool labels_last_col = false;
  DireConfig cfg;
  uint64_t seed = 0;
};

void add_embed_flags(CLI::App* cmd, EmbedArgs& args) {
  cmd->add_option("--in", args.in, "input matrix (.csv/.npy/.raw)")
      ->required();
  cmd->add_option("--out", args.out, "output embedding (.csv or .npy)")
      ->required();
  cmd->add_option("--manifest", args.manifest, "manifest path override");
  cmd->add_flag("--labels-last-col", args.labels_last_col,
                "treat the last csv column as labels");
  cmd->add_option("--init", args.init, "pca|spectral|diffusion|jl");
  cmd->add_option("--k", args.cfg.n_neighbors, "neighbors for the kNN graph");
  cmd->add_option("--spread", args.cfg.spread, "kernel spread");
  cmd->add_option("--min-dist", args.cfg.min_dist, "kernel min_dist");
  cmd->add_option("--neg-ratio", args.cfg.neg_ratio,
                  "negative samples per point per iteration");
  cmd->add_option("--iters", args.cfg.max_iter, "layout iterations");
  cmd->add_option("--cutoff", args.cfg.cutoff, "force magnitude clamp");
  cmd->add_option("--lr", args.cfg.lr_initial, "initial learning rate");
  cmd->add_option("--dim", args.cfg.dim, "embedding dimension (2 or 3)");
  cmd->add_option("--seed", args.seed, "master seed");
  cmd->add_option("--preset", args.preset, "preset name: topology-tuned");
}

DireConfig resolve_embed_config(const CLI::App* cmd, const EmbedArgs& args) {
  DireConfig cfg = args.cfg;
  cfg.init = parse_init_kind(args.init);
  if (!args.preset.empty()) {
    if (args.preset != "topology-tuned")
      throw InvalidInput("unknown preset: " + args.preset);
    const DireConfig preset = topology_tuned_preset();
    // Explicit flags win over the preset.
    if (!cmd->count("--init")) cfg.init = preset.init;
    if (!cmd->count("--k")) cfg.n_neighbors = preset.n_neighbors;
    if (!cmd->count("--spread")) cfg.spread = preset.spread;
    if (!cmd->count("--min-dist")) cfg.min_dist = preset.min_dist;
    if (!cmd->count("--neg-ratio")) cfg.neg_ratio = preset.neg_ratio;
    if (!cmd->count("--iters")) cfg.max_iter = preset.max_iter;
    if (!cmd->count("--cutoff")) cfg.cutoff = preset.cutoff;
  }
  return cfg;
}

int cmd_embed(const CLI::App* cmd, const EmbedArgs& args, unsigned threads,
              uint64_t seed, bool dry_run) {
  const DireConfig cfg = resolve_embed_config(cmd, args);
  json config = config_to_json(cfg);
  config["in"] = args.in;
  config["preset"] = args.preset;
  if (dry_run) {
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  RunContext ctx;
  const PointCloud cloud = ctx.run("load", [&] {
    return load_matrix(args.in, args.labels_last_col);
  });
  const Embedding embedded = ctx.run("embed", [&] {
    return dire_embed(cloud, cfg, seed, threads);
  });
  ctx.run("save", [&] {
    save_matrix(args.out, embedded.coords,
                cloud.has_labels() &&
                        format_from_path(args.out) == MatrixFormat::Csv
                    ? &cloud.labels
                    : nullptr);
  });
  write_manifest("embed", args.out, config, seed, threads, ctx, args.manifest);
  return 0;
}

// ---------------------------------------------------------------- stress

int cmd_stress(const std::string& manifold, int n, double sigma, double R,
               double r, uint64_t seed, const std::string& out,
               const std::string& manifest, bool dry_run) {
  json config{{"manifold", manifold}, {"n", n},      {"sigma", sigma},
              {"R", R},               {"r", r},      {"out", out}};
  if (dry_run) {
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  RunContext ctx;
  const PointCloud cloud = ctx.run("sample", [&] {
    if (manifold == "figure8") return sample_figure8(n, sigma, seed);
    if (manifold == "torus") return sample_torus(n, R, r, sigma, seed);
    throw InvalidInput("unknown manifold: " + manifold);
  });
  ctx.run("save", [&] { save_matrix(out, cloud.data); });
  write_manifest("stress", out, config, seed, 1, ctx, manifest);
  return 0;
}

// ---------------------------------------------------------------- betti

json diagram_to_json(const PersistenceDiagram& diagram) {
  json bars = json::array();
  for (const auto& bar : diagram.bars) {
    json b{{"dim", bar.dim}, {"birth", bar.birth}};
    if (bar.finite())
      b["death"] = bar.death;
    else
      b["death"] = nullptr;  // infinite bar
    bars.push_back(b);
  }
  return json{{"bars", bars}, {"threshold", diagram.threshold}};
}

int cmd_betti(const std::string& in, int maxdim, double threshold,
              const std::string& out, const std::string& curve_out,
              int curve_dim, int grid_size, const std::string& manifest,
              unsigned threads, bool dry_run) {
  json config{{"in", in},           {"maxdim", maxdim},
              {"threshold", threshold}, {"curve_out", curve_out},
              {"curve_dim", curve_dim}, {"grid", grid_size}};
  if (dry_run) {
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  RunContext ctx;
  const PointCloud cloud = ctx.run("load", [&] { return load_matrix(in); });
  const PersistenceDiagram diagram = ctx.run("persistence", [&] {
    return rips_persistence(cloud, maxdim, threshold);
  });
  ctx.run("save", [&] { write_text(out, diagram_to_json(diagram).dump(2) + "\n"); });
  if (!curve_out.empty()) {
    ctx.run("curve", [&] {
      const BettiCurve curve = betti_curve(diagram, curve_dim, grid_size);
      std::ostringstream csv;
      csv.precision(17);
      for (std::size_t i = 0; i < curve.grid.size(); ++i)
        csv << curve.grid[i] << ',' << curve.counts[i] << '\n';
      write_text(curve_out, csv.str());
    });
  }
  write_manifest("betti", out, config, 0, threads, ctx, manifest);
  return 0;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const std::string& orig_path, const std::string& embed_path,
             const std::string& labels_path, int k, uint64_t seed,
             const std::string& out, const std::string& manifest,
             bool dry_run) {
  json config{{"orig", orig_path}, {"embed", embed_path},
              {"labels", labels_path}, {"k", k}};
  if (dry_run) {
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  RunContext ctx;
  const PointCloud orig = ctx.run("load", [&] { return load_matrix(orig_path); });
  const PointCloud embedded = load_matrix(embed_path);
  if (orig.n() != embedded.n())
    throw InvalidInput("eval: row count mismatch between inputs");
  const Embedding embedding{embedded.data};
  json result;
  ctx.run("metrics", [&] {
    if (!labels_path.empty()) {
      SplitSpec split;
      split.seed = seed;
      result["accuracy"] =
          knn_accuracy(embedding, load_labels(labels_path), k, split);
    }
    result["trustworthiness"] = trustworthiness(orig, embedding, k);
    result["knn_preservation"] = knn_preservation(orig, embedding, k);
  });
  const std::string text = result.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) write_text(out, text);
  write_manifest("eval", out.empty() ? "eval.json" : out, config, seed, 1, ctx,
                 manifest);
  return 0;
}

// ---------------------------------------------------------------- noise-sweep

int cmd_noise_sweep(const std::string& sigmas_arg, int seeds, int n,
                    uint64_t seed, const DireConfig& base,
                    const std::string& out, const std::string& svg,
                    const std::string& manifest, unsigned threads,
                    bool dry_run) {
  NoiseSweepOptions options;
  options.sigmas.clear();
  std::stringstream ss(sigmas_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) options.sigmas.push_back(std::stod(tok));
  if (options.sigmas.empty()) throw InvalidInput("noise-sweep: no sigmas given");
  options.n_seeds = seeds;
  options.n_points = n;
  options.seed = seed;
  options.n_threads = threads;
  options.base = base;

  json config{{"sigmas", options.sigmas}, {"seeds", seeds},  {"n", n},
              {"base", config_to_json(base)}, {"svg", svg}};
  if (dry_run) {
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  RunContext ctx;
  const auto rows = ctx.run("sweep", [&] { return noise_sweep(options); });
  std::ostringstream csv;
  csv << "sigma,raw,dire_pca,dire_spectral\n";
  for (const auto& row : rows)
    csv << row.sigma << ',' << row.raw_mean << ',' << row.pca_mean << ','
        << row.spectral_mean << '\n';
  write_text(out, csv.str());
  std::cout << csv.str();
  if (!svg.empty()) {
    std::vector<double> x;
    std::vector<std::vector<double>> series(3);
    for (const auto& row : rows) {
      x.push_back(row.sigma);
      series[0].push_back(row.raw_mean);
      series[1].push_back(row.pca_mean);
      series[2].push_back(row.spectral_mean);
    }
    write_text(svg, svg_line_chart(x, series, {"raw", "dire-pca", "dire-spectral"}));
  }
  write_manifest("noise-sweep", out, config, seed, threads, ctx, manifest);
  return 0;
}

// ---------------------------------------------------------------- pareto

int cmd_pareto(const std::string& data_path, const std::string& labels_arg,
               int trials, int pop, uint64_t seed, double ref_acc,
               double ref_te, bool has_reference, const std::string& out,
               const std::string& manifest, unsigned threads, bool dry_run) {
  json config{{"data", data_path}, {"labels", labels_arg}, {"trials", trials},
              {"pop", pop},        {"out", out}};
  if (has_reference) {
    config["reference_acc"] = ref_acc;
    config["reference_te"] = ref_te;
  }
  if (dry_run) {
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  RunContext ctx;
  const PointCloud dataset = ctx.run("load", [&] {
    if (labels_arg == "last-col") return load_matrix(data_path, true);
    PointCloud cloud = load_matrix(data_path);
    if (!labels_arg.empty()) cloud.labels = load_labels(labels_arg);
    return cloud;
  });

  const Study study = ctx.run("search", [&] {
    DireEvaluator evaluator(dataset, default_stress_set(), seed);
    SearchOptions options;
    options.pop_size = pop;
    options.n_trials = trials;
    options.seed = seed;
    options.n_workers = threads;
    return nsga2_run(evaluator, options);
  });

  json trials_json = json::array();
  for (const auto& trial : study.trials) {
    trials_json.push_back(
        json{{"params",
              json{{"init", init_kind_name(trial.params.init)},
                   {"n_neighbors", trial.params.n_neighbors},
                   {"cutoff", trial.params.cutoff},
                   {"spread", trial.params.spread},
                   {"min_dist", trial.params.min_dist},
                   {"neg_ratio", trial.params.neg_ratio},
                   {"max_iter", trial.params.max_iter}}},
             {"objectives",
              json{{"acc", trial.objectives.acc}, {"te", trial.objectives.te}}},
             {"status", trial.ok ? "ok" : "failed"},
             {"time_ms", trial.time_ms}});
  }
  json study_json{{"trials", trials_json}, {"front", study.front}};
  if (has_reference) {
    const Objectives reference{ref_acc, ref_te};
    study_json["reference"] =
        json{{"acc", ref_acc},
             {"te", ref_te},
             {"dominated_by", count_strictly_dominating(study.trials,
                                                        study.front, reference)}};
  }
  write_text(out, study_json.dump(2) + "\n");
  write_manifest("pareto", out, config, seed, threads, ctx, manifest);

  std::cout << "trials: " << study.trials.size()
            << ", front size: " << study.front.size() << "\n";
  for (const int i : study.front) {
    const auto& t = study.trials[static_cast<std::size_t>(i)];
    std::cout << "  front trial " << i << ": acc=" << t.objectives.acc
              << " te=" << t.objectives.te << " ("
              << init_kind_name(t.params.init) << ", k=" << t.params.n_neighbors
              << ", spread=" << t.params.spread << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------- plot

int cmd_plot(const std::string& in, const std::string& betti_csv,
             const std::string& labels_path, bool labels_last_col,
             const std::string& out, const std::string& manifest,
             bool dry_run) {
  json config{{"in", in}, {"betti", betti_csv}, {"out", out}};
  if (dry_run) {
    std::cout << config.dump(2) << "\n";
    return 0;
  }
  RunContext ctx;
  if (!betti_csv.empty()) {
    ctx.run("plot", [&] {
      const PointCloud table = load_matrix(betti_csv, MatrixFormat::Csv);
      if (table.dim() != 2)
        throw InvalidInput("plot: betti curve csv must have 2 columns");
      BettiCurve curve;
      for (Eigen::Index i = 0; i < table.n(); ++i) {
        curve.grid.push_back(table.data(i, 0));
        curve.counts.push_back(static_cast<int>(table.data(i, 1)));
      }
      write_text(out, svg_betti_curve(curve));
    });
  } else {
    if (in.empty()) throw InvalidInput("plot: need --in or --betti");
    ctx.run("plot", [&] {
      PointCloud cloud = load_matrix(in, labels_last_col);
      if (!labels_path.empty()) cloud.labels = load_labels(labels_path);
      if (cloud.dim() != 2)
        throw InvalidInput("plot: scatter needs a 2-D embedding, got D=" +
                           std::to_string(cloud.dim()));
      write_text(out, svg_scatter(cloud.data, cloud.labels));
    });
  }
  write_manifest("plot", out, config, 0, 1, ctx, manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topology-faithful force-directed embedding toolkit"};
  app.require_subcommand(1);
  int threads_flag = 0;
  bool dry_run = false;
  app.add_option("--threads", threads_flag,
                 "worker threads (default: machine, or TOPOEMBED_THREADS)");
  app.add_flag("--dry-run", dry_run, "print the resolved config and exit");

  // embed
  EmbedArgs embed_args;
  CLI::App* embed = app.add_subcommand("embed", "run the embedding pipeline");
  add_embed_flags(embed, embed_args);

  // stress
  std::string stress_manifold = "figure8", stress_out, stress_manifest;
  int stress_n = 1000;
  double stress_sigma = 0.0, stress_R = 2.0, stress_r = 1.0;
  uint64_t stress_seed = 0;
  CLI::App* stress = app.add_subcommand("stress", "sample a stress manifold");
  stress->add_option("--manifold", stress_manifold, "figure8|torus");
  stress->add_option("--n", stress_n, "points");
  stress->add_option("--sigma", stress_sigma, "gaussian noise std");
  stress->add_option("--R", stress_R, "torus major radius");
  stress->add_option("--r", stress_r, "torus minor radius");
  stress->add_option("--seed", stress_seed, "seed");
  stress->add_option("--out", stress_out, "output csv")->required();
  stress->add_option("--manifest", stress_manifest, "manifest path override");

  // betti
  std::string betti_in, betti_out, betti_curve_out, betti_manifest;
  int betti_maxdim = 1, betti_curve_dim = 1, betti_grid = 200;
  double betti_threshold = 0.0;
  CLI::App* betti = app.add_subcommand("betti", "Rips persistence diagram");
  betti->add_option("--in", betti_in, "point matrix or embedding")->required();
  betti->add_option("--maxdim", betti_maxdim, "max homology dimension (0/1)");
  betti->add_option("--threshold", betti_threshold,
                    "filtration threshold (default: enclosing radius)");
  betti->add_option("--out", betti_out, "diagram json")->required();
  betti->add_option("--curve-out", betti_curve_out, "betti curve csv");
  betti->add_option("--curve-dim", betti_curve_dim, "curve dimension");
  betti->add_option("--grid", betti_grid, "curve grid size");
  betti->add_option("--manifest", betti_manifest, "manifest path override");

  // eval
  std::string eval_orig, eval_embed, eval_labels, eval_out, eval_manifest;
  int eval_k = 15;
  uint64_t eval_seed = 0;
  CLI::App* eval = app.add_subcommand("eval", "neighborhood metrics");
  eval->add_option("--orig", eval_orig, "original matrix")->required();
  eval->add_option("--embed", eval_embed, "embedding matrix")->required();
  eval->add_option("--labels", eval_labels, "labels csv (enables accuracy)");
  eval->add_option("--k", eval_k, "neighborhood size");
  eval->add_option("--seed", eval_seed, "split seed");
  eval->add_option("--out", eval_out, "write the json here too");
  eval->add_option("--manifest", eval_manifest, "manifest path override");

  // noise-sweep
  std::string sweep_sigmas = "0.01,0.02,0.05,0.1,0.2";
  std::string sweep_out = "noise_sweep.csv", sweep_svg, sweep_manifest;
  int sweep_seeds = 10, sweep_n = 1000;
  uint64_t sweep_seed = 0;
  DireConfig sweep_base;
  CLI::App* sweep = app.add_subcommand(
      "noise-sweep", "significant-bar counts vs figure-8 noise");
  sweep->add_option("--sigmas", sweep_sigmas, "comma-separated noise levels");
  sweep->add_option("--seeds", sweep_seeds, "repeats per level");
  sweep->add_option("--n", sweep_n, "points per sample");
  sweep->add_option("--seed", sweep_seed, "master seed");
  sweep->add_option("--k", sweep_base.n_neighbors, "embedding kNN");
  sweep->add_option("--spread", sweep_base.spread, "kernel spread");
  sweep->add_option("--min-dist", sweep_base.min_dist, "kernel min_dist");
  sweep->add_option("--iters", sweep_base.max_iter, "layout iterations");
  sweep->add_option("--neg-ratio", sweep_base.neg_ratio, "negatives per point");
  sweep->add_option("--cutoff", sweep_base.cutoff, "force clamp");
  sweep->add_option("--out", sweep_out, "output csv");
  sweep->add_option("--svg", sweep_svg, "optional line chart");
  sweep->add_option("--manifest", sweep_manifest, "manifest path override");

  // pareto
  std::string pareto_data, pareto_labels = "last-col";
  std::string pareto_out = "study.json", pareto_manifest;
  int pareto_trials = 150, pareto_pop = 25;
  uint64_t pareto_seed = 0;
  double pareto_ref_acc = 0.0, pareto_ref_te = 0.0;
  CLI::App* pareto =
      app.add_subcommand("pareto", "NSGA-II study over the hyperparameter box");
  pareto->add_option("--data", pareto_data, "labeled dataset csv")->required();
  pareto->add_option("--labels", pareto_labels,
                     "'last-col' or a separate labels csv");
  pareto->add_option("--trials", pareto_trials, "evaluation budget");
  pareto->add_option("--pop", pareto_pop, "population size");
  pareto->add_option("--seed", pareto_seed, "study seed");
  CLI::Option* ref_acc_opt =
      pareto->add_option("--reference-acc", pareto_ref_acc,
                         "reference accuracy for the dominance count");
  pareto->add_option("--reference-te", pareto_ref_te, "reference topology error")
      ->needs(ref_acc_opt);
  pareto->add_option("--out", pareto_out, "study json");
  pareto->add_option("--manifest", pareto_manifest, "manifest path override");

  // plot
  std::string plot_in, plot_betti, plot_labels, plot_out, plot_manifest;
  bool plot_labels_last = false;
  CLI::App* plot = app.add_subcommand("plot", "svg scatter or betti curve");
  plot->add_option("--in", plot_in, "2-D embedding (csv/npy)");
  plot->add_option("--betti", plot_betti, "betti curve csv");
  plot->add_option("--labels", plot_labels, "labels csv for coloring");
  plot->add_flag("--labels-last-col", plot_labels_last,
                 "embedding csv carries labels in its last column");
  plot->add_option("--out", plot_out, "output svg")->required();
  plot->add_option("--manifest", plot_manifest, "manifest path override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const unsigned threads = resolve_threads(threads_flag);
  try {
    if (embed->parsed())
      return cmd_embed(embed, embed_args, threads, embed_args.seed, dry_run);
    if (stress->parsed())
      return cmd_stress(stress_manifold, stress_n, stress_sigma, stress_R,
                        stress_r, stress_seed, stress_out, stress_manifest,
                        dry_run);
    if (betti->parsed())
      return cmd_betti(betti_in, betti_maxdim, betti_threshold, betti_out,
                       betti_curve_out, betti_curve_dim, betti_grid,
                       betti_manifest, threads, dry_run);
    if (eval->parsed())
      return cmd_eval(eval_orig, eval_embed, eval_labels, eval_k, eval_seed,
                      eval_out, eval_manifest, dry_run);
    if (sweep->parsed())
      return cmd_noise_sweep(sweep_sigmas, sweep_seeds, sweep_n, sweep_seed,
                             sweep_base, sweep_out, sweep_svg, sweep_manifest,
                             threads, dry_run);
    if (pareto->parsed())
      return cmd_pareto(pareto_data, pareto_labels, pareto_trials, pareto_pop,
                        pareto_seed, pareto_ref_acc, pareto_ref_te,
                        pareto->count("--reference-acc") > 0, pareto_out,
                        pareto_manifest, threads, dry_run);
    if (plot->parsed())
      return cmd_plot(plot_in, plot_betti, plot_labels, plot_labels_last,
                      plot_out, plot_manifest, dry_run);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
