#include "peanut/impute.hpp"

#include <cmath>

#include "peanut/errors.hpp"
#include "peanut/rng.hpp"

namespace peanut {

namespace {

double observed_mean(const MaskedSeries& series) {
  double sum = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < series.values.size(); ++i) {
    if (series.mask[i]) {
      sum += series.values[i];
      ++count;
    }
  }
  if (count == 0) fail(Errc::no_observed_values, "column has no observed values");
  return sum / static_cast<double>(count);
}

std::vector<CellProvenance> fill_provenance(const std::vector<uint8_t>& mask) {
  std::vector<CellProvenance> prov(mask.size());
  for (size_t i = 0; i < mask.size(); ++i) {
    prov[i] = mask[i] ? CellProvenance::real : CellProvenance::synthetic;
  }
  return prov;
}

}  // namespace

const char* strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::passthrough: return "passthrough";
    case StrategyKind::drop_missing: return "drop_missing";
    case StrategyKind::global_mean: return "global_mean";
    case StrategyKind::monte_carlo: return "monte_carlo";
    case StrategyKind::model_based: return "model_based";
  }
  return "unknown";
}

StrategyKind strategy_from_name(const std::string& name) {
  if (name == "passthrough") return StrategyKind::passthrough;
  if (name == "drop" || name == "drop_missing") return StrategyKind::drop_missing;
  if (name == "mean" || name == "global_mean") return StrategyKind::global_mean;
  if (name == "mc" || name == "monte_carlo") return StrategyKind::monte_carlo;
  if (name == "model" || name == "model_based") return StrategyKind::model_based;
  fail(Errc::validation_error, "unknown imputation strategy '" + name + "'");
}

size_t HybridFrame::synthetic_count() const {
  size_t n = 0;
  for (CellProvenance p : provenance) n += p == CellProvenance::synthetic ? 1 : 0;
  return n;
}

std::vector<double> global_mean_impute(const MaskedSeries& series) {
  if (series.values.size() != series.mask.size()) {
    fail(Errc::length_mismatch, "mask length does not match values");
  }
  const double mean = observed_mean(series);
  std::vector<double> out = series.values;
  for (size_t i = 0; i < out.size(); ++i) {
    if (!series.mask[i]) out[i] = mean;
  }
  return out;
}

std::vector<double> monte_carlo_impute(const MaskedSeries& series, int64_t draws, uint64_t seed) {
  if (series.values.size() != series.mask.size()) {
    fail(Errc::length_mismatch, "mask length does not match values");
  }
  if (draws < 1) fail(Errc::validation_error, "draws must be >= 1");
  const size_t observed = series.observed_count();
  if (observed == 0) fail(Errc::no_observed_values, "column has no observed values");
  if (observed < 2) {
    fail(Errc::no_observed_values, "need at least 2 observed values for a sample std");
  }

  const double mean = observed_mean(series);
  double ss = 0.0;
  for (size_t i = 0; i < series.values.size(); ++i) {
    if (series.mask[i]) ss += (series.values[i] - mean) * (series.values[i] - mean);
  }
  const double sd = std::sqrt(ss / static_cast<double>(observed - 1));

  std::vector<double> out = series.values;
  for (size_t i = 0; i < out.size(); ++i) {
    if (series.mask[i]) continue;
    RngStream rng(derive_seed(seed, static_cast<uint64_t>(i)));
    double sum = 0.0;
    for (int64_t d = 0; d < draws; ++d) sum += rng.normal(mean, sd);
    out[i] = sum / static_cast<double>(draws);
  }
  return out;
}

HybridFrame model_based_impute(const ObservationFrame& frame, const std::string& target,
                               const std::vector<std::string>& features,
                               const ForestHyper& hyper, uint64_t seed) {
  frame.column_index(target);
  if (features.empty()) fail(Errc::validation_error, "model_based needs at least one feature");
  for (const auto& f : features) {
    frame.column_index(f);
    if (f == target) fail(Errc::validation_error, "feature set must exclude the target");
  }

  const auto& tmask = frame.mask(target);
  const auto& tvalues = frame.values(target);
  std::vector<size_t> train_rows;
  std::vector<size_t> fill_rows;
  std::vector<size_t> unfilled;
  for (size_t r = 0; r < frame.rows(); ++r) {
    bool features_ok = true;
    for (const auto& f : features) {
      if (!frame.mask(f)[r]) {
        features_ok = false;
        break;
      }
    }
    if (tmask[r]) {
      if (features_ok) train_rows.push_back(r);
    } else if (features_ok) {
      fill_rows.push_back(r);
    } else {
      unfilled.push_back(r);
    }
  }
  if (train_rows.size() < 2) {
    fail(Errc::insufficient_training_rows,
         "model_based needs >= 2 rows with target and features observed, have " +
             std::to_string(train_rows.size()));
  }

  HybridFrame out;
  out.target = target;
  out.strategy = strategy_name(StrategyKind::model_based);
  out.unfilled_rows = unfilled;

  std::vector<double> filled = tvalues;
  std::vector<uint8_t> new_mask = tmask;
  out.provenance.resize(frame.rows(), CellProvenance::missing);
  for (size_t r = 0; r < frame.rows(); ++r) {
    if (tmask[r]) out.provenance[r] = CellProvenance::real;
  }

  if (!fill_rows.empty()) {
    std::vector<std::vector<double>> train_x(features.size());
    std::vector<double> train_y;
    train_y.reserve(train_rows.size());
    for (size_t f = 0; f < features.size(); ++f) {
      const auto& col = frame.values(features[f]);
      auto& dst = train_x[f];
      dst.reserve(train_rows.size());
      for (size_t r : train_rows) dst.push_back(col[r]);
    }
    for (size_t r : train_rows) train_y.push_back(tvalues[r]);

    ForestHyper h = hyper;
    h.seed = seed;
    const ForestModel model = fit_forest(train_x, train_y, h, features);

    std::vector<std::vector<double>> fill_x(features.size());
    for (size_t f = 0; f < features.size(); ++f) {
      const auto& col = frame.values(features[f]);
      auto& dst = fill_x[f];
      dst.reserve(fill_rows.size());
      for (size_t r : fill_rows) dst.push_back(col[r]);
    }
    const std::vector<double> predicted = predict(model, fill_x);
    for (size_t i = 0; i < fill_rows.size(); ++i) {
      filled[fill_rows[i]] = predicted[i];
      new_mask[fill_rows[i]] = 1;
      out.provenance[fill_rows[i]] = CellProvenance::synthetic;
    }
  }

  out.frame = frame.with_series(target, MaskedSeries{std::move(filled), std::move(new_mask)});
  return out;
}

HybridFrame impute(const ObservationFrame& frame, const std::string& target,
                   const ImputationStrategy& strategy) {
  frame.column_index(target);

  switch (strategy.kind) {
    case StrategyKind::passthrough: {
      HybridFrame out;
      out.frame = frame;
      out.target = target;
      out.strategy = strategy_name(strategy.kind);
      const auto& mask = frame.mask(target);
      out.provenance.resize(frame.rows());
      for (size_t r = 0; r < frame.rows(); ++r) {
        out.provenance[r] = mask[r] ? CellProvenance::real : CellProvenance::missing;
      }
      return out;
    }
    case StrategyKind::drop_missing: {
      HybridFrame out;
      out.frame = complete_rows(frame, {target});
      out.target = target;
      out.strategy = strategy_name(strategy.kind);
      out.provenance.assign(out.frame.rows(), CellProvenance::real);
      return out;
    }
    case StrategyKind::global_mean: {
      const MaskedSeries series{frame.values(target), frame.mask(target)};
      std::vector<double> filled = global_mean_impute(series);
      HybridFrame out;
      out.provenance = fill_provenance(series.mask);
      out.frame = frame.with_series(
          target, MaskedSeries{std::move(filled), std::vector<uint8_t>(frame.rows(), 1)});
      out.target = target;
      out.strategy = strategy_name(strategy.kind);
      return out;
    }
    case StrategyKind::monte_carlo: {
      const MaskedSeries series{frame.values(target), frame.mask(target)};
      std::vector<double> filled = monte_carlo_impute(series, strategy.draws, strategy.seed);
      HybridFrame out;
      out.provenance = fill_provenance(series.mask);
      out.frame = frame.with_series(
          target, MaskedSeries{std::move(filled), std::vector<uint8_t>(frame.rows(), 1)});
      out.target = target;
      out.strategy = strategy_name(strategy.kind);
      return out;
    }
    case StrategyKind::model_based: {
      std::vector<std::string> features = strategy.features;
      if (features.empty()) {
        for (const auto& name : frame.column_names()) {
          if (name != target && frame.role(name) == ColumnRole::feature) {
            features.push_back(name);
          }
        }
      }
      return model_based_impute(frame, target, features, strategy.hyper, strategy.seed);
    }
  }
  fail(Errc::validation_error, "unhandled imputation strategy");
}

}  // namespace peanut
