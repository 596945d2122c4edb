#include "peanut/simulate.hpp"

#include <cmath>

#include "peanut/errors.hpp"
#include "peanut/rng.hpp"

namespace peanut {

namespace {

void check_spec(const SimulationSpec& spec) {
  if (spec.n_days < 1) fail(Errc::invalid_spec, "n_days must be >= 1");
  if (spec.weekly_period < 2) fail(Errc::invalid_spec, "weekly_period must be >= 2");
  if (!(spec.ar_phi > -1.0 && spec.ar_phi < 1.0)) {
    fail(Errc::invalid_spec, "ar_phi must lie in (-1, 1)");
  }
  if (!(spec.ar_noise_sd >= 0.0) || !std::isfinite(spec.ar_noise_sd)) {
    fail(Errc::invalid_spec, "ar_noise_sd must be finite and >= 0");
  }
  if (!(spec.target_noise_sd >= 0.0) || !std::isfinite(spec.target_noise_sd)) {
    fail(Errc::invalid_spec, "target_noise_sd must be finite and >= 0");
  }
  if (!std::isfinite(spec.relation.a) || !std::isfinite(spec.relation.b)) {
    fail(Errc::invalid_spec, "relation parameters must be finite");
  }
}

}  // namespace

const char* relation_name(RelationKind kind) {
  switch (kind) {
    case RelationKind::linear: return "linear";
    case RelationKind::sine: return "sine";
    case RelationKind::tanh_s: return "tanh";
  }
  return "unknown";
}

RelationKind relation_from_name(const std::string& name) {
  if (name == "linear") return RelationKind::linear;
  if (name == "sine") return RelationKind::sine;
  if (name == "tanh") return RelationKind::tanh_s;
  fail(Errc::invalid_spec, "unknown relation '" + name + "'");
}

double apply_relation(const Relation& relation, double x) {
  switch (relation.kind) {
    case RelationKind::linear: return relation.a + relation.b * x;
    case RelationKind::sine: return relation.a * std::sin(relation.b * x);
    case RelationKind::tanh_s: return relation.a * std::tanh(relation.b * x);
  }
  fail(Errc::invalid_spec, "unknown relation kind");
}

SimulationTruth generate(const SimulationSpec& spec) {
  check_spec(spec);
  const size_t n = static_cast<size_t>(spec.n_days);

  RngStream feature_rng(derive_seed(spec.seed, 1));
  RngStream noise_rng(derive_seed(spec.seed, 2));

  std::vector<double> feature(n);
  const double stationary = std::sqrt(1.0 - spec.ar_phi * spec.ar_phi);
  for (size_t t = 0; t < n; ++t) {
    const double e = feature_rng.normal(0.0, spec.ar_noise_sd);
    feature[t] = t == 0 ? e / stationary : spec.ar_phi * feature[t - 1] + e;
  }

  std::vector<double> target(n);
  for (size_t t = 0; t < n; ++t) {
    target[t] = apply_relation(spec.relation, feature[t]) +
                noise_rng.normal(0.0, spec.target_noise_sd);
  }

  std::vector<CalendarDate> dates(n);
  CalendarDate day{2020, 1, 15};
  for (size_t t = 0; t < n; ++t) {
    dates[t] = day;
    day = day.next();
  }

  std::vector<uint8_t> full_mask(n, 1);
  std::vector<uint8_t> weekly_mask(n, 0);
  for (size_t t = 0; t < n; t += static_cast<size_t>(spec.weekly_period)) weekly_mask[t] = 1;

  SimulationTruth truth;
  truth.spec = spec;
  truth.full = ObservationFrame::build(
      dates, {ColumnSpec{"feature", feature, full_mask, ColumnRole::feature},
              ColumnSpec{"target", target, full_mask, ColumnRole::target}});
  truth.masked = ObservationFrame::build(
      dates, {ColumnSpec{"feature", feature, full_mask, ColumnRole::feature},
              ColumnSpec{"target", target, weekly_mask, ColumnRole::target}});
  return truth;
}

double imputation_rmse(const SimulationTruth& truth, const HybridFrame& hybrid) {
  if (hybrid.frame.rows() != truth.full.rows()) {
    fail(Errc::frame_mismatch, "hybrid row count differs from the truth");
  }
  if (hybrid.frame.dates() != truth.full.dates()) {
    fail(Errc::frame_mismatch, "hybrid dates differ from the truth");
  }
  if (!hybrid.frame.has_column(hybrid.target) || !truth.full.has_column(hybrid.target)) {
    fail(Errc::frame_mismatch, "hybrid target column missing from the truth");
  }

  const auto& truth_mask = truth.masked.mask(hybrid.target);
  const auto& truth_values = truth.full.values(hybrid.target);
  const auto& hybrid_mask = hybrid.frame.mask(hybrid.target);
  const auto& hybrid_values = hybrid.frame.values(hybrid.target);

  double sq = 0.0;
  size_t count = 0;
  for (size_t r = 0; r < truth_mask.size(); ++r) {
    if (truth_mask[r]) continue;
    if (!hybrid_mask[r]) {
      fail(Errc::frame_mismatch, "hybrid target still missing at row " + std::to_string(r));
    }
    const double e = hybrid_values[r] - truth_values[r];
    sq += e * e;
    ++count;
  }
  if (count == 0) return 0.0;
  return std::sqrt(sq / static_cast<double>(count));
}

SimulationSpec default_nonlinear_spec(uint64_t seed) {
  SimulationSpec spec;
  spec.n_days = 1253;
  spec.relation = Relation{RelationKind::tanh_s, 1.0, 2.0};
  spec.ar_phi = 0.9;
  spec.ar_noise_sd = 0.25;
  spec.target_noise_sd = 0.15;
  spec.weekly_period = 7;
  spec.seed = seed;
  return spec;
}

}  // namespace peanut
