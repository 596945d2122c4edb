#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peanut/forest.hpp"
#include "peanut/frame.hpp"

namespace peanut {

enum class StrategyKind {
  passthrough,
  drop_missing,
  global_mean,
  monte_carlo,
  model_based,
};

const char* strategy_name(StrategyKind kind);
StrategyKind strategy_from_name(const std::string& name);  // accepts CLI aliases

struct ImputationStrategy {
  StrategyKind kind = StrategyKind::passthrough;
  int64_t draws = 100;   // monte_carlo
  uint64_t seed = 0;     // monte_carlo and model_based
  ForestHyper hyper;     // model_based (its seed field is ignored; seed above wins)
  // model_based inputs; empty means every feature-role column except the
  // target.
  std::vector<std::string> features;
};

enum class CellProvenance : uint8_t { real, synthetic, missing };

/// Frame plus a per-row provenance tag for the imputed target column.
struct HybridFrame {
  ObservationFrame frame;
  std::string target;
  std::string strategy;
  std::vector<CellProvenance> provenance;
  // Rows model_based could not fill because a feature was missing too.
  std::vector<size_t> unfilled_rows;

  size_t synthetic_count() const;
};

/// Missing slots become the mean of observed slots.
std::vector<double> global_mean_impute(const MaskedSeries& series);

/// Missing slot at row r becomes the average of `draws` Normal(mean, std)
/// samples from a stream derived from (seed, r), so evaluation order does
/// not matter. std is the sample standard deviation of observed slots.
std::vector<double> monte_carlo_impute(const MaskedSeries& series, int64_t draws, uint64_t seed);

/// Forest trained on rows where target and features are all observed, then
/// evaluated on rows missing the target. Rows missing a feature stay
/// missing and are listed in unfilled_rows.
HybridFrame model_based_impute(const ObservationFrame& frame, const std::string& target,
                               const std::vector<std::string>& features,
                               const ForestHyper& hyper, uint64_t seed);

HybridFrame impute(const ObservationFrame& frame, const std::string& target,
                   const ImputationStrategy& strategy);

}  // namespace peanut
