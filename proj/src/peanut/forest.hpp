#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peanut/rng.hpp"

namespace peanut {

enum class MaxFeatures { all, sqrt_count, fixed };

struct ForestHyper {
  int64_t n_trees = 100;
  int64_t max_depth = 0;  // 0 = unlimited
  int64_t min_samples_leaf = 1;
  int64_t min_samples_split = 2;
  MaxFeatures max_features = MaxFeatures::all;
  int64_t max_features_count = 0;  // used when max_features == fixed
  bool bootstrap = true;
  uint64_t seed = 0;
};

/// Flat node record. feature < 0 marks a leaf holding value; otherwise rows
/// with x[feature] <= threshold go to left, the rest to right.
struct TreeNode {
  int32_t feature = -1;
  double threshold = 0.0;
  double value = 0.0;
  int32_t left = -1;
  int32_t right = -1;
};

using Tree = std::vector<TreeNode>;

struct ForestModel {
  std::vector<Tree> trees;
  ForestHyper hyper;
  std::vector<std::string> feature_names;
};

/// Greedy variance-reduction CART. X is column major (one vector per
/// feature); rows must be complete. The candidate feature subset at each
/// node is drawn from rng when max_features limits it. Ties in split gain
/// break toward the lowest feature index, then the lowest threshold.
Tree fit_tree(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
              const ForestHyper& hyper, RngStream& rng);

/// Bootstrap-aggregated trees; tree i trains on a resample drawn from a
/// stream derived from (hyper.seed, i), so results do not depend on
/// training order or thread count.
ForestModel fit_forest(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                       const ForestHyper& hyper, std::vector<std::string> feature_names = {});

double predict_tree(const Tree& tree, const double* row);

/// Per row, the mean of the per-tree leaf values, accumulated in tree order.
std::vector<double> predict(const ForestModel& model, const std::vector<std::vector<double>>& X);

/// Structured-text (JSON) round trip.
std::string forest_to_json(const ForestModel& model);
ForestModel forest_from_json(const std::string& text);

}  // namespace peanut
