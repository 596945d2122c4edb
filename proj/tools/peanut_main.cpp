#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "peanut/peanut.h"

namespace {

int finish(pnt_status status) {
  if (status == PNT_OK) return 0;
  std::cerr << "peanut: error: " << pnt_last_error() << std::endl;
  return status == PNT_USAGE ? 1 : 2;
}

int usage(const std::string& message) {
  std::cerr << "peanut: error: usage_error: " << message << std::endl;
  return 1;
}

struct FrameHandle {
  pnt_frame* frame = nullptr;
  ~FrameHandle() { pnt_frame_free(frame); }
};

struct FitHandle {
  pnt_fit* fit = nullptr;
  ~FitHandle() { pnt_fit_free(fit); }
};

struct ForestHandle {
  pnt_forest* forest = nullptr;
  ~ForestHandle() { pnt_forest_free(forest); }
};

struct StringHandle {
  char* text = nullptr;
  ~StringHandle() { pnt_string_free(text); }
};

struct ForestFlags {
  int64_t n_trees = 100;
  int64_t max_depth = 0;
  int64_t min_samples_leaf = 1;
  int64_t min_samples_split = 2;
  std::string max_features = "all";
  bool no_bootstrap = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n-trees", n_trees, "trees in the forest (default 100)");
    cmd->add_option("--max-depth", max_depth, "depth limit, 0 = unlimited (default)");
    cmd->add_option("--min-samples-leaf", min_samples_leaf, "minimum rows per leaf (default 1)");
    cmd->add_option("--min-samples-split", min_samples_split,
                    "minimum rows to split a node (default 2)");
    cmd->add_option("--max-features", max_features,
                    "candidate features per split: all, sqrt, or a count (default all)");
    cmd->add_flag("--no-bootstrap", no_bootstrap, "train every tree on the full sample");
  }

  pnt_forest_params params(uint64_t seed) const {
    pnt_forest_params p;
    pnt_forest_params_init(&p);
    p.n_trees = n_trees;
    p.max_depth = max_depth;
    p.min_samples_leaf = min_samples_leaf;
    p.min_samples_split = min_samples_split;
    p.max_features = max_features.c_str();
    p.bootstrap = no_bootstrap ? 0 : 1;
    p.seed = seed;
    return p;
  }
};

std::vector<const char*> c_names(const std::vector<std::string>& names) {
  std::vector<const char*> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(name.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peanut: missing-data imputation benchmark toolkit"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse configured CSV sources into one frame");
  std::string ingest_config;
  std::string ingest_out;
  ingest->add_option("--config", ingest_config, "run configuration file")->required();
  ingest->add_option("--out", ingest_out, "frame file to write")->required();

  // describe
  auto* describe = app.add_subcommand("describe", "descriptive statistics for a frame");
  std::string describe_frame;
  bool describe_json = false;
  bool describe_missing = false;
  std::string describe_scatter;
  describe->add_option("frame", describe_frame, "frame file")->required();
  describe->add_flag("--json", describe_json, "structured output instead of a table");
  describe->add_flag("--missing", describe_missing, "missingness summary instead of stats");
  describe->add_option("--scatter", describe_scatter, "emit observed (date, value) points of a column");

  // impute
  auto* impute = app.add_subcommand("impute", "fill a column with a chosen strategy");
  std::string impute_frame;
  std::string impute_target;
  std::string impute_strategy;
  std::string impute_out;
  std::string impute_features;
  int64_t impute_draws = 100;
  uint64_t impute_seed = 0;
  bool impute_seed_set = false;
  ForestFlags impute_forest;
  impute->add_option("frame", impute_frame, "frame file")->required();
  impute->add_option("--target", impute_target, "column to fill")->required();
  impute->add_option("--strategy", impute_strategy,
                     "passthrough | drop | mean | mc | model")->required();
  impute->add_option("--out", impute_out, "output frame file")->required();
  impute->add_option("--draws", impute_draws, "mc samples averaged per cell (default 100)");
  impute->add_option("--seed", impute_seed, "rng seed (required for mc and model)")
      ->each([&](const std::string&) { impute_seed_set = true; });
  impute->add_option("--features", impute_features,
                     "comma-separated model inputs (default: feature-role columns)");
  impute_forest.attach(impute);

  // fit-ols
  auto* fit_ols = app.add_subcommand("fit-ols", "least squares with inference");
  std::string ols_frame;
  std::string ols_y;
  std::vector<std::string> ols_x;
  bool ols_json = false;
  fit_ols->add_option("frame", ols_frame, "frame file")->required();
  fit_ols->add_option("--y", ols_y, "response column")->required();
  fit_ols->add_option("--x", ols_x, "regressor columns")->required()->expected(-1);
  fit_ols->add_flag("--json", ols_json, "structured output instead of a table");

  // train-forest
  auto* train = app.add_subcommand("train-forest", "fit a random forest on complete rows");
  std::string train_frame;
  std::string train_y;
  std::vector<std::string> train_x;
  std::string train_out;
  std::string train_predict_out;
  uint64_t train_seed = 0;
  bool train_seed_set = false;
  ForestFlags train_forest;
  train->add_option("frame", train_frame, "frame file")->required();
  train->add_option("--y", train_y, "target column")->required();
  train->add_option("--x", train_x, "feature columns")->required()->expected(-1);
  train->add_option("--out", train_out, "model file to write")->required();
  train->add_option("--predict-out", train_predict_out,
                    "also write predictions for feature-complete rows");
  train->add_option("--seed", train_seed, "rng seed (required)")
      ->each([&](const std::string&) { train_seed_set = true; });
  train_forest.attach(train);

  // bench
  auto* bench = app.add_subcommand("bench", "run the five-model benchmark from a config");
  std::string bench_config;
  std::string bench_out;
  int64_t bench_folds = 0;
  uint64_t bench_seed = 0;
  bool bench_seed_set = false;
  bench->add_option("--config", bench_config, "run configuration file")->required();
  bench->add_option("--folds", bench_folds, "cross-validation folds (overrides config)");
  bench->add_option("--seed", bench_seed, "master seed (overrides config)")
      ->each([&](const std::string&) { bench_seed_set = true; });
  bench->add_option("--out", bench_out, "output directory (overrides config)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate ground truth with weekly masking");
  pnt_sim_params sim;
  pnt_sim_params_init(&sim);
  std::string sim_relation = "tanh";
  std::string sim_out;
  uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  simulate->add_option("--n-days", sim.n_days, "days to generate (default 1253)");
  simulate->add_option("--relation", sim_relation, "linear | sine | tanh (default tanh)");
  simulate->add_option("--a", sim.a, "relation parameter a (default 1)");
  simulate->add_option("--b", sim.b, "relation parameter b (default 2)");
  simulate->add_option("--phi", sim.ar_phi, "feature AR(1) coefficient (default 0.9)");
  simulate->add_option("--ar-noise", sim.ar_noise_sd, "feature innovation sd (default 0.25)");
  simulate->add_option("--target-noise", sim.target_noise_sd, "target noise sd (default 0.15)");
  simulate->add_option("--period", sim.weekly_period, "observe the target every Nth day (default 7)");
  simulate->add_option("--seed", sim_seed, "rng seed (required)")
      ->each([&](const std::string&) { sim_seed_set = true; });
  simulate->add_option("--out", sim_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "peanut: error: usage_error: " << e.what() << std::endl;
    return 1;
  }

  if (ingest->parsed()) {
    FrameHandle frame;
    pnt_status st = pnt_ingest(ingest_config.c_str(), &frame.frame);
    if (st != PNT_OK) return finish(st);
    return finish(pnt_frame_write(frame.frame, ingest_out.c_str()));
  }

  if (describe->parsed()) {
    FrameHandle frame;
    pnt_status st = pnt_frame_read(describe_frame.c_str(), &frame.frame);
    if (st != PNT_OK) return finish(st);
    StringHandle text;
    if (!describe_scatter.empty()) {
      st = pnt_scatter_json(frame.frame, describe_scatter.c_str(), &text.text);
    } else if (describe_missing) {
      st = describe_json ? pnt_missingness_json(frame.frame, &text.text)
                         : pnt_missingness_text(frame.frame, &text.text);
    } else {
      st = describe_json ? pnt_describe_stats_json(frame.frame, &text.text)
                         : pnt_describe_stats_text(frame.frame, &text.text);
    }
    if (st != PNT_OK) return finish(st);
    std::cout << text.text;
    return 0;
  }

  if (impute->parsed()) {
    const bool randomized = impute_strategy == "mc" || impute_strategy == "monte_carlo" ||
                            impute_strategy == "model" || impute_strategy == "model_based";
    if (randomized && !impute_seed_set) {
      return usage("--seed is required for strategy '" + impute_strategy + "'");
    }
    FrameHandle frame;
    pnt_status st = pnt_frame_read(impute_frame.c_str(), &frame.frame);
    if (st != PNT_OK) return finish(st);
    const pnt_forest_params params = impute_forest.params(impute_seed);
    FrameHandle result;
    st = pnt_impute(frame.frame, impute_target.c_str(), impute_strategy.c_str(), impute_draws,
                    impute_seed, impute_features.empty() ? nullptr : impute_features.c_str(),
                    &params, &result.frame);
    if (st != PNT_OK) return finish(st);
    return finish(pnt_frame_write(result.frame, impute_out.c_str()));
  }

  if (fit_ols->parsed()) {
    FrameHandle frame;
    pnt_status st = pnt_frame_read(ols_frame.c_str(), &frame.frame);
    if (st != PNT_OK) return finish(st);
    const std::vector<const char*> x = c_names(ols_x);
    FitHandle fit;
    st = pnt_fit_ols(frame.frame, ols_y.c_str(), x.data(), x.size(), &fit.fit);
    if (st != PNT_OK) return finish(st);
    StringHandle text;
    st = ols_json ? pnt_fit_json(fit.fit, &text.text) : pnt_fit_table(fit.fit, &text.text);
    if (st != PNT_OK) return finish(st);
    std::cout << text.text;
    return 0;
  }

  if (train->parsed()) {
    if (!train_seed_set) return usage("--seed is required for train-forest");
    FrameHandle frame;
    pnt_status st = pnt_frame_read(train_frame.c_str(), &frame.frame);
    if (st != PNT_OK) return finish(st);
    const pnt_forest_params params = train_forest.params(train_seed);
    const std::vector<const char*> x = c_names(train_x);
    ForestHandle forest;
    st = pnt_forest_train(frame.frame, train_y.c_str(), x.data(), x.size(), &params,
                          &forest.forest);
    if (st != PNT_OK) return finish(st);
    st = pnt_forest_save(forest.forest, train_out.c_str());
    if (st != PNT_OK) return finish(st);
    if (!train_predict_out.empty()) {
      StringHandle text;
      st = pnt_forest_predict_frame(forest.forest, frame.frame, &text.text);
      if (st != PNT_OK) return finish(st);
      FILE* out = std::fopen(train_predict_out.c_str(), "wb");
      if (!out) {
        std::cerr << "peanut: error: io_error: cannot open " << train_predict_out << std::endl;
        return 2;
      }
      std::fputs(text.text, out);
      std::fclose(out);
    }
    return 0;
  }

  if (bench->parsed()) {
    const pnt_status st =
        pnt_bench(bench_config.c_str(), bench_folds, bench_seed, bench_seed_set ? 1 : 0,
                  bench_out.empty() ? nullptr : bench_out.c_str());
    if (st != PNT_OK) return finish(st);
    std::cout << "wrote report.txt, report.json, ols_model_<id>.txt" << std::endl;
    return 0;
  }

  if (simulate->parsed()) {
    if (!sim_seed_set) return usage("--seed is required for simulate");
    sim.relation = sim_relation.c_str();
    sim.seed = sim_seed;
    const pnt_status st = pnt_simulate_to_dir(&sim, sim_out.c_str());
    if (st != PNT_OK) return finish(st);
    std::cout << "wrote truth_full.json, truth_masked.json" << std::endl;
    return 0;
  }

  return usage("no subcommand given");
}
