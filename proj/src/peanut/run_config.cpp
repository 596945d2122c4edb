#include "peanut/run_config.hpp"

#include <filesystem>

#include <json.hpp>

#include "peanut/errors.hpp"
#include "peanut/frame_json.hpp"

namespace peanut {

namespace {

using njson = nlohmann::json;

ForestHyper hyper_from_json(const njson& j, const std::string& field) {
  ForestHyper h;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_trees") {
      h.n_trees = value.get<int64_t>();
    } else if (key == "max_depth") {
      h.max_depth = value.get<int64_t>();
    } else if (key == "min_samples_leaf") {
      h.min_samples_leaf = value.get<int64_t>();
    } else if (key == "min_samples_split") {
      h.min_samples_split = value.get<int64_t>();
    } else if (key == "max_features") {
      if (value.is_number()) {
        h.max_features = MaxFeatures::fixed;
        h.max_features_count = value.get<int64_t>();
      } else if (value.get<std::string>() == "all") {
        h.max_features = MaxFeatures::all;
      } else if (value.get<std::string>() == "sqrt") {
        h.max_features = MaxFeatures::sqrt_count;
      } else {
        fail(Errc::validation_error, field + ".max_features");
      }
    } else if (key == "bootstrap") {
      h.bootstrap = value.get<bool>();
    } else {
      fail(Errc::validation_error, field + "." + key + " is not a forest setting");
    }
  }
  return h;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  njson doc;
  try {
    doc = njson::parse(text);
  } catch (const njson::exception& e) {
    fail(Errc::parse_error, path + ": " + e.what());
  }

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  RunConfig config;
  try {
    if (!doc.contains("sources") || !doc.at("sources").is_array() || doc.at("sources").empty()) {
      fail(Errc::validation_error, "sources");
    }
    for (const auto& js : doc.at("sources")) {
      SourceSpec src;
      if (!js.contains("path")) fail(Errc::validation_error, "sources[].path");
      src.path = (base / js.at("path").get<std::string>()).string();
      if (js.contains("frequency")) {
        src.frequency = frequency_from_name(js.at("frequency").get<std::string>());
      }
      if (js.contains("date_columns")) {
        src.date_columns = js.at("date_columns").get<std::vector<std::string>>();
      }
      if (js.contains("missing_token")) {
        src.missing_token = js.at("missing_token").get<std::string>();
      }
      if (!js.contains("columns") || js.at("columns").empty()) {
        fail(Errc::validation_error, "sources[].columns");
      }
      for (const auto& [srcname, jm] : js.at("columns").items()) {
        ColumnMapEntry entry;
        entry.name = jm.contains("name") ? jm.at("name").get<std::string>() : srcname;
        if (jm.contains("role")) {
          entry.role = role_from_name(jm.at("role").get<std::string>());
        }
        src.columns[srcname] = entry;
      }
      config.sources.push_back(std::move(src));
    }

    int targets = 0;
    for (const auto& src : config.sources) {
      for (const auto& [_, entry] : src.columns) {
        targets += entry.role == ColumnRole::target ? 1 : 0;
      }
    }
    if (targets != 1) {
      fail(Errc::validation_error, "sources[].columns.role: exactly one target required, found " +
                                       std::to_string(targets));
    }

    if (doc.contains("folds")) config.bench.folds = doc.at("folds").get<int64_t>();
    if (config.bench.folds < 2) fail(Errc::validation_error, "folds");
    if (!doc.contains("seed")) fail(Errc::validation_error, "seed (required, never clock-seeded)");
    config.bench.seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("output_dir")) {
      config.output_dir = (base / doc.at("output_dir").get<std::string>()).string();
    } else {
      config.output_dir = base.empty() ? std::string(".") : base.string();
    }

    if (doc.contains("benchmark")) {
      const auto& jb = doc.at("benchmark");
      for (const auto& [key, value] : jb.items()) {
        if (key == "response") {
          config.bench.response = value.get<std::string>();
        } else if (key == "regressors") {
          config.bench.regressors = value.get<std::vector<std::string>>();
        } else if (key == "impute_target") {
          config.bench.impute_target = value.get<std::string>();
        } else if (key == "model_features") {
          config.model_features = value.get<std::vector<std::string>>();
        } else if (key == "draws") {
          config.mc_draws = value.get<int64_t>();
          if (config.mc_draws < 1) fail(Errc::validation_error, "benchmark.draws");
        } else if (key == "forest") {
          config.learner_hyper = hyper_from_json(value, "benchmark.forest");
        } else if (key == "impute_forest") {
          config.impute_hyper = hyper_from_json(value, "benchmark.impute_forest");
        } else {
          fail(Errc::validation_error, "benchmark." + key + " is not a benchmark setting");
        }
      }
    }
    if (config.bench.response.empty()) fail(Errc::validation_error, "benchmark.response");
  } catch (const njson::exception& e) {
    fail(Errc::validation_error, path + ": " + e.what());
  }
  return config;
}

ObservationFrame load_sources(const RunConfig& config) {
  std::vector<ObservationFrame> daily;
  std::vector<ObservationFrame> weekly;
  for (const auto& src : config.sources) {
    ObservationFrame frame = parse_tracker_csv(src);
    if (src.frequency == Frequency::daily) {
      daily.push_back(std::move(frame));
    } else {
      weekly.push_back(std::move(frame));
    }
  }
  if (daily.size() != 1) {
    fail(Errc::validation_error,
         "sources: exactly one daily source required, found " + std::to_string(daily.size()));
  }
  ObservationFrame merged = std::move(daily[0]);
  for (const auto& w : weekly) merged = merge_sources(merged, w);
  return merged;
}

std::vector<ModelConfig> configs_for_run(const RunConfig& config) {
  std::vector<ModelConfig> configs = default_configs(config.bench.seed, config.model_features);
  for (auto& c : configs) {
    c.learner_hyper = config.learner_hyper;
    c.strategy.draws = config.mc_draws;
    c.strategy.hyper = config.impute_hyper;
  }
  return configs;
}

}  // namespace peanut
