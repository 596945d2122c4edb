#pragma once

#include <string>
#include <vector>

#include "peanut/csv_ingest.hpp"
#include "peanut/evaluate.hpp"

namespace peanut {

/// Everything a full bench run needs, loaded from one JSON file. Paths are
/// resolved relative to the config file's directory.
struct RunConfig {
  std::vector<SourceSpec> sources;
  BenchmarkSpec bench;
  std::vector<std::string> model_features;  // model_based inputs, empty = by role
  ForestHyper learner_hyper;                // CV forest learner
  ForestHyper impute_hyper;                 // model_based forest
  int64_t mc_draws = 100;
  std::string output_dir = ".";
};

RunConfig load_config(const std::string& path);

/// Ingest every source and merge the weekly ones onto the single daily one.
ObservationFrame load_sources(const RunConfig& config);

/// The five standard model configs with this config's hyperparameters,
/// draws, feature set, and derived seeds applied.
std::vector<ModelConfig> configs_for_run(const RunConfig& config);

}  // namespace peanut
