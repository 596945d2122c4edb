#include "peanut/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "peanut/errors.hpp"
#include "peanut/threads.hpp"

namespace peanut {

namespace {

void check_hyper(const ForestHyper& h) {
  if (h.n_trees < 1) fail(Errc::validation_error, "n_trees must be >= 1");
  if (h.max_depth < 0) fail(Errc::validation_error, "max_depth must be >= 0 (0 = unlimited)");
  if (h.min_samples_leaf < 1) fail(Errc::validation_error, "min_samples_leaf must be >= 1");
  if (h.min_samples_split < 2) fail(Errc::validation_error, "min_samples_split must be >= 2");
  if (h.max_features == MaxFeatures::fixed && h.max_features_count < 1) {
    fail(Errc::validation_error, "max_features count must be >= 1");
  }
}

size_t feature_budget(const ForestHyper& h, size_t n_features) {
  switch (h.max_features) {
    case MaxFeatures::all:
      return n_features;
    case MaxFeatures::sqrt_count:
      return std::max<size_t>(1, static_cast<size_t>(std::sqrt(static_cast<double>(n_features))));
    case MaxFeatures::fixed:
      return std::min<size_t>(n_features, static_cast<size_t>(h.max_features_count));
  }
  return n_features;
}

// Tree builder over presorted row orderings: each feature keeps the node's
// rows as a contiguous, (value, target)-sorted segment, and splits
// stable-partition every segment. Sorting happens once per tree.
class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
              const ForestHyper& hyper, RngStream& rng)
      : x_(X), y_(y), hyper_(hyper), rng_(rng), n_(y.size()), f_(X.size()) {
    order_.resize(f_);
    for (size_t f = 0; f < f_; ++f) {
      auto& ord = order_[f];
      ord.resize(n_);
      std::iota(ord.begin(), ord.end(), uint32_t{0});
      const auto& col = x_[f];
      std::sort(ord.begin(), ord.end(), [&](uint32_t a, uint32_t b) {
        if (col[a] != col[b]) return col[a] < col[b];
        return y_[a] < y_[b];
      });
    }
    scratch_.resize(n_);
    goes_left_.resize(n_);
    pool_.resize(f_);
    std::iota(pool_.begin(), pool_.end(), uint32_t{0});
  }

  Tree build() {
    Tree tree;
    tree.emplace_back();
    struct Item {
      int32_t slot;
      size_t start, end;
      int64_t depth;
    };
    std::vector<Item> stack;
    stack.push_back({0, 0, n_, 0});
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      expand(tree, it.slot, it.start, it.end, it.depth, stack);
    }
    return tree;
  }

 private:
  struct SplitChoice {
    bool found = false;
    size_t feature = 0;
    double threshold = 0.0;
    double score = 0.0;  // sum of child (sum^2 / count), larger is better
    size_t left_count = 0;
  };

  template <typename Stack>
  void expand(Tree& tree, int32_t slot, size_t start, size_t end, int64_t depth, Stack& stack) {
    const size_t count = end - start;
    double sum = 0.0;
    double ymin = y_[order_[0][start]];
    double ymax = ymin;
    for (size_t j = start; j < end; ++j) {
      const double v = y_[order_[0][j]];
      sum += v;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
    const double mean = sum / static_cast<double>(count);

    const bool depth_ok = hyper_.max_depth == 0 || depth < hyper_.max_depth;
    if (!depth_ok || count < static_cast<size_t>(hyper_.min_samples_split) ||
        count < 2 * static_cast<size_t>(hyper_.min_samples_leaf) || ymin == ymax) {
      tree[slot].value = mean;
      return;
    }

    const SplitChoice choice = best_split(start, end, sum);
    if (!choice.found) {
      tree[slot].value = mean;
      return;
    }

    partition(start, end, choice);

    const int32_t left = static_cast<int32_t>(tree.size());
    tree.emplace_back();
    const int32_t right = static_cast<int32_t>(tree.size());
    tree.emplace_back();
    tree[slot].feature = static_cast<int32_t>(choice.feature);
    tree[slot].threshold = choice.threshold;
    tree[slot].left = left;
    tree[slot].right = right;

    // Right pushed first so the left child is expanded next: depth-first,
    // left-to-right, which fixes node numbering and rng consumption order.
    stack.push_back({right, start + choice.left_count, end, depth + 1});
    stack.push_back({left, start, start + choice.left_count, depth + 1});
  }

  SplitChoice best_split(size_t start, size_t end, double total_sum) {
    const size_t count = end - start;
    const size_t msl = static_cast<size_t>(hyper_.min_samples_leaf);
    const size_t budget = feature_budget(hyper_, f_);

    // Candidate features in ascending index order so the tie-break is
    // stable no matter how the subset was drawn.
    std::vector<uint32_t> candidates;
    if (budget >= f_) {
      candidates = pool_;
    } else {
      for (size_t i = 0; i < budget; ++i) {
        const size_t j = i + static_cast<size_t>(rng_.below(f_ - i));
        std::swap(pool_[i], pool_[j]);
      }
      candidates.assign(pool_.begin(), pool_.begin() + budget);
      std::sort(candidates.begin(), candidates.end());
    }

    SplitChoice best;
    for (uint32_t f : candidates) {
      const auto& ord = order_[f];
      const auto& col = x_[f];
      double lsum = 0.0;
      for (size_t j = start; j + 1 < end; ++j) {
        lsum += y_[ord[j]];
        if (col[ord[j]] == col[ord[j + 1]]) continue;
        const size_t cl = j + 1 - start;
        const size_t cr = count - cl;
        if (cl < msl || cr < msl) continue;
        const double rsum = total_sum - lsum;
        const double score = lsum * lsum / static_cast<double>(cl) +
                             rsum * rsum / static_cast<double>(cr);
        if (!best.found || score > best.score) {
          best.found = true;
          best.feature = f;
          best.threshold = col[ord[j]] + 0.5 * (col[ord[j + 1]] - col[ord[j]]);
          best.score = score;
          best.left_count = cl;
        }
      }
    }
    return best;
  }

  void partition(size_t start, size_t end, const SplitChoice& choice) {
    const auto& col = x_[choice.feature];
    for (size_t j = start; j < end; ++j) {
      const uint32_t row = order_[choice.feature][j];
      goes_left_[row] = col[row] <= choice.threshold ? 1 : 0;
    }
    for (size_t f = 0; f < f_; ++f) {
      auto& ord = order_[f];
      size_t lo = start;
      size_t hi = 0;
      for (size_t j = start; j < end; ++j) {
        const uint32_t row = ord[j];
        if (goes_left_[row]) {
          ord[lo++] = row;
        } else {
          scratch_[hi++] = row;
        }
      }
      std::copy(scratch_.begin(), scratch_.begin() + hi, ord.begin() + lo);
    }
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<double>& y_;
  const ForestHyper& hyper_;
  RngStream& rng_;
  const size_t n_;
  const size_t f_;
  std::vector<std::vector<uint32_t>> order_;
  std::vector<uint32_t> scratch_;
  std::vector<uint8_t> goes_left_;
  std::vector<uint32_t> pool_;
};

void check_training_input(const std::vector<std::vector<double>>& X,
                          const std::vector<double>& y) {
  if (y.empty() || X.empty()) fail(Errc::empty_input, "training data must be non-empty");
  for (const auto& col : X) {
    if (col.size() != y.size()) {
      fail(Errc::dimension_mismatch, "feature length " + std::to_string(col.size()) + " vs " +
                                         std::to_string(y.size()) + " targets");
    }
  }
  for (double v : y) {
    if (!std::isfinite(v)) fail(Errc::missing_values_present, "non-finite target value");
  }
  for (const auto& col : X) {
    for (double v : col) {
      if (!std::isfinite(v)) fail(Errc::missing_values_present, "non-finite feature value");
    }
  }
}

}  // namespace

Tree fit_tree(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
              const ForestHyper& hyper, RngStream& rng) {
  check_hyper(hyper);
  check_training_input(X, y);
  TreeBuilder builder(X, y, hyper, rng);
  return builder.build();
}

ForestModel fit_forest(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                       const ForestHyper& hyper, std::vector<std::string> feature_names) {
  check_hyper(hyper);
  check_training_input(X, y);
  if (y.size() < 2) fail(Errc::empty_input, "forest training needs at least 2 rows");
  if (!feature_names.empty() && feature_names.size() != X.size()) {
    fail(Errc::dimension_mismatch, "feature name count does not match feature count");
  }

  ForestModel model;
  model.hyper = hyper;
  if (feature_names.empty()) {
    for (size_t f = 0; f < X.size(); ++f) feature_names.push_back("x" + std::to_string(f));
  }
  model.feature_names = std::move(feature_names);
  model.trees.resize(static_cast<size_t>(hyper.n_trees));

  const size_t n = y.size();
  parallel_for(static_cast<size_t>(hyper.n_trees), [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      RngStream rng(derive_seed(hyper.seed, static_cast<uint64_t>(i)));
      if (hyper.bootstrap) {
        std::vector<std::vector<double>> bx(X.size(), std::vector<double>(n));
        std::vector<double> by(n);
        for (size_t r = 0; r < n; ++r) {
          const size_t pick = static_cast<size_t>(rng.below(n));
          for (size_t f = 0; f < X.size(); ++f) bx[f][r] = X[f][pick];
          by[r] = y[pick];
        }
        TreeBuilder builder(bx, by, hyper, rng);
        model.trees[i] = builder.build();
      } else {
        TreeBuilder builder(X, y, hyper, rng);
        model.trees[i] = builder.build();
      }
    }
  });
  return model;
}

double predict_tree(const Tree& tree, const double* row) {
  int32_t node = 0;
  while (tree[node].feature >= 0) {
    node = row[tree[node].feature] <= tree[node].threshold ? tree[node].left
                                                           : tree[node].right;
  }
  return tree[node].value;
}

std::vector<double> predict(const ForestModel& model, const std::vector<std::vector<double>>& X) {
  if (X.size() != model.feature_names.size()) {
    fail(Errc::feature_count_mismatch, "model expects " +
                                           std::to_string(model.feature_names.size()) +
                                           " features, got " + std::to_string(X.size()));
  }
  const size_t n = X.empty() ? 0 : X[0].size();
  for (const auto& col : X) {
    if (col.size() != n) fail(Errc::dimension_mismatch, "ragged feature columns");
  }
  std::vector<double> out(n);
  std::vector<double> row(X.size());
  for (size_t r = 0; r < n; ++r) {
    for (size_t f = 0; f < X.size(); ++f) row[f] = X[f][r];
    double sum = 0.0;
    for (const auto& tree : model.trees) sum += predict_tree(tree, row.data());
    out[r] = sum / static_cast<double>(model.trees.size());
  }
  return out;
}

std::string forest_to_json(const ForestModel& model) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : model.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : tree) {
      if (nd.feature < 0) {
        nodes.push_back({{"value", nd.value}});
      } else {
        nodes.push_back({{"feature", nd.feature},
                         {"threshold", nd.threshold},
                         {"left", nd.left},
                         {"right", nd.right}});
      }
    }
    trees.push_back(std::move(nodes));
  }

  const auto& h = model.hyper;
  std::string mf;
  switch (h.max_features) {
    case MaxFeatures::all: mf = "all"; break;
    case MaxFeatures::sqrt_count: mf = "sqrt"; break;
    case MaxFeatures::fixed: mf = std::to_string(h.max_features_count); break;
  }
  nlohmann::json doc = {{"kind", "forest"},
                        {"feature_names", model.feature_names},
                        {"hyper",
                         {{"n_trees", h.n_trees},
                          {"max_depth", h.max_depth},
                          {"min_samples_leaf", h.min_samples_leaf},
                          {"min_samples_split", h.min_samples_split},
                          {"max_features", mf},
                          {"bootstrap", h.bootstrap},
                          {"seed", h.seed}}},
                        {"trees", std::move(trees)}};
  return doc.dump() + "\n";
}

ForestModel forest_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("forest document: ") + e.what());
  }
  try {
    if (doc.at("kind").get<std::string>() != "forest") {
      fail(Errc::parse_error, "document kind is not 'forest'");
    }
    ForestModel model;
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    const auto& h = doc.at("hyper");
    model.hyper.n_trees = h.at("n_trees").get<int64_t>();
    model.hyper.max_depth = h.at("max_depth").get<int64_t>();
    model.hyper.min_samples_leaf = h.at("min_samples_leaf").get<int64_t>();
    model.hyper.min_samples_split = h.at("min_samples_split").get<int64_t>();
    model.hyper.bootstrap = h.at("bootstrap").get<bool>();
    model.hyper.seed = h.at("seed").get<uint64_t>();
    const std::string mf = h.at("max_features").get<std::string>();
    if (mf == "all") {
      model.hyper.max_features = MaxFeatures::all;
    } else if (mf == "sqrt") {
      model.hyper.max_features = MaxFeatures::sqrt_count;
    } else {
      model.hyper.max_features = MaxFeatures::fixed;
      model.hyper.max_features_count = std::stoll(mf);
    }
    for (const auto& jt : doc.at("trees")) {
      Tree tree;
      for (const auto& jn : jt) {
        TreeNode nd;
        if (jn.contains("value")) {
          nd.value = jn.at("value").get<double>();
        } else {
          nd.feature = jn.at("feature").get<int32_t>();
          nd.threshold = jn.at("threshold").get<double>();
          nd.left = jn.at("left").get<int32_t>();
          nd.right = jn.at("right").get<int32_t>();
        }
        tree.push_back(nd);
      }
      if (tree.empty()) fail(Errc::parse_error, "empty tree in forest document");
      model.trees.push_back(std::move(tree));
    }
    if (model.trees.empty()) fail(Errc::parse_error, "forest document holds no trees");
    return model;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("forest document: ") + e.what());
  }
}

}  // namespace peanut
