#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peanut/forest.hpp"
#include "peanut/frame.hpp"
#include "peanut/impute.hpp"
#include "peanut/ols.hpp"

namespace peanut {

struct Metrics {
  double mae = 0.0;
  double mse = 0.0;
  double r2 = 0.0;  // NaN when the evaluation target is constant
};

/// mae = mean |e|, mse = mean e^2, r2 = 1 - SSE/SST on the given pairs.
Metrics metrics(const std::vector<double>& y_true, const std::vector<double>& y_pred);

/// Shuffled indices cut into k folds of size floor(n/k) or ceil(n/k); the
/// first n % k folds take the extra row. Deterministic per seed.
std::vector<std::vector<size_t>> kfold_split(size_t n, int64_t k, uint64_t seed);

enum class LearnerKind { ols, forest };

const char* learner_name(LearnerKind kind);

/// k-fold CV of y ~ xs. The frame must be fully observed on y and xs; a
/// masked cell raises missing_values_present naming the column, which the
/// benchmark surfaces as an NA entry. Forest folds train with seed
/// derive_seed(seed, fold_index). Returns the unweighted mean of the k
/// per-fold metric triples.
Metrics cross_validate(const ObservationFrame& frame, const std::string& y,
                       const std::vector<std::string>& xs, LearnerKind learner,
                       const ForestHyper& hyper, int64_t k, uint64_t seed);

struct ModelConfig {
  int64_t id = 0;  // 1 Passthrough, 2 DropMissing, 3 GlobalMean, 4 MonteCarlo, 5 ModelBased
  ImputationStrategy strategy;
  LearnerKind learner = LearnerKind::forest;
  ForestHyper learner_hyper;
};

/// The five standard configurations. Imputation seeds derive from
/// (run_seed, id); model_based features default to role resolution unless
/// model_features is given.
std::vector<ModelConfig> default_configs(uint64_t run_seed,
                                         const std::vector<std::string>& model_features = {});

struct BenchmarkSpec {
  std::string impute_target;            // empty: the unique target-role column
  std::string response;                 // required
  std::vector<std::string> regressors;  // empty: [impute_target]
  int64_t folds = 5;
  uint64_t seed = 0;
};

struct ConfigResult {
  int64_t id = 0;
  std::string strategy;
  std::string learner;
  size_t rows = 0;
  size_t synthetic_cells = 0;
  size_t unfilled_cells = 0;
  bool ols_ok = false;
  OlsFit ols;
  std::string ols_error;
  bool cv_ok = false;
  Metrics cv;
  std::string cv_error;
};

struct BenchmarkReport {
  uint64_t seed = 0;
  int64_t folds = 0;
  std::string impute_target;
  std::string response;
  std::vector<std::string> regressors;
  size_t input_rows = 0;
  size_t target_missing = 0;
  std::vector<ConfigResult> results;
  std::vector<std::string> notes;
};

/// Per config: impute, fit OLS on the result (complete rows), cross-validate
/// with the config's learner. Failures become NA entries with the reason;
/// the run itself never aborts on a config.
BenchmarkReport run_benchmark(const ObservationFrame& frame, const BenchmarkSpec& spec,
                              const std::vector<ModelConfig>& configs);

std::string render_benchmark_report(const BenchmarkReport& report);
std::string benchmark_report_json(const BenchmarkReport& report);

}  // namespace peanut
