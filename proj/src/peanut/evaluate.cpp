#include "peanut/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "peanut/errors.hpp"
#include "peanut/rng.hpp"

namespace peanut {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fixed3(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

nlohmann::json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

void require_observed(const ObservationFrame& frame, const std::string& column) {
  const auto& mask = frame.mask(column);
  for (size_t r = 0; r < mask.size(); ++r) {
    if (!mask[r]) {
      fail(Errc::missing_values_present,
           "column '" + column + "' has a missing value at row " + std::to_string(r));
    }
  }
}

std::vector<double> gather(const std::vector<double>& src, const std::vector<size_t>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (size_t r : rows) out.push_back(src[r]);
  return out;
}

nlohmann::json fit_json(const OlsFit& fit) {
  nlohmann::json coef = nlohmann::json::array();
  for (size_t j = 0; j < fit.names.size(); ++j) {
    coef.push_back({{"name", fit.names[j]},
                    {"coef", fit.coef[j]},
                    {"se", fit.se[j]},
                    {"t", num_or_null(fit.t[j])},
                    {"p", num_or_null(fit.p[j])},
                    {"ci_low", fit.ci_low[j]},
                    {"ci_high", fit.ci_high[j]}});
  }
  return {{"n", fit.n},          {"df", fit.df},   {"r2", num_or_null(fit.r2)},
          {"sigma2", fit.sigma2}, {"rss", fit.rss}, {"coefficients", std::move(coef)}};
}

}  // namespace

Metrics metrics(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size()) {
    fail(Errc::length_mismatch, "prediction length " + std::to_string(y_pred.size()) + " vs " +
                                    std::to_string(y_true.size()) + " truths");
  }
  if (y_true.empty()) fail(Errc::empty_metric_input, "metrics need at least one pair");

  const double n = static_cast<double>(y_true.size());
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  double mean = 0.0;
  for (double v : y_true) mean += v;
  mean /= n;
  double sst = 0.0;
  for (size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_true[i] - y_pred[i];
    abs_sum += std::fabs(e);
    sq_sum += e * e;
    sst += (y_true[i] - mean) * (y_true[i] - mean);
  }
  Metrics m;
  m.mae = abs_sum / n;
  m.mse = sq_sum / n;
  m.r2 = sst > 0.0 ? 1.0 - sq_sum / sst : kNan;
  return m;
}

std::vector<std::vector<size_t>> kfold_split(size_t n, int64_t k, uint64_t seed) {
  if (k < 2 || static_cast<size_t>(k) > n) {
    fail(Errc::bad_k, "k must satisfy 2 <= k <= " + std::to_string(n) + ", got " +
                          std::to_string(k));
  }
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  RngStream rng(seed);
  rng.shuffle(idx);

  std::vector<std::vector<size_t>> folds(static_cast<size_t>(k));
  const size_t base = n / static_cast<size_t>(k);
  const size_t extra = n % static_cast<size_t>(k);
  size_t at = 0;
  for (size_t f = 0; f < folds.size(); ++f) {
    const size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(idx.begin() + at, idx.begin() + at + size);
    std::sort(folds[f].begin(), folds[f].end());
    at += size;
  }
  return folds;
}

const char* learner_name(LearnerKind kind) {
  return kind == LearnerKind::ols ? "ols" : "forest";
}

Metrics cross_validate(const ObservationFrame& frame, const std::string& y,
                       const std::vector<std::string>& xs, LearnerKind learner,
                       const ForestHyper& hyper, int64_t k, uint64_t seed) {
  frame.column_index(y);
  for (const auto& x : xs) frame.column_index(x);
  if (xs.empty()) fail(Errc::validation_error, "cross_validate needs at least one regressor");
  require_observed(frame, y);
  for (const auto& x : xs) require_observed(frame, x);

  const auto folds = kfold_split(frame.rows(), k, seed);
  const auto& yv = frame.values(y);

  double mae = 0.0;
  double mse = 0.0;
  double r2 = 0.0;
  for (size_t f = 0; f < folds.size(); ++f) {
    std::vector<uint8_t> in_fold(frame.rows(), 0);
    for (size_t r : folds[f]) in_fold[r] = 1;
    std::vector<size_t> train;
    train.reserve(frame.rows() - folds[f].size());
    for (size_t r = 0; r < frame.rows(); ++r) {
      if (!in_fold[r]) train.push_back(r);
    }

    const std::vector<double> train_y = gather(yv, train);
    const std::vector<double> test_y = gather(yv, folds[f]);
    std::vector<std::vector<double>> train_x;
    std::vector<std::vector<double>> test_x;
    for (const auto& x : xs) {
      train_x.push_back(gather(frame.values(x), train));
      test_x.push_back(gather(frame.values(x), folds[f]));
    }

    std::vector<double> pred;
    if (learner == LearnerKind::ols) {
      const OlsFit fit = fit_ols(train_y, train_x, xs);
      pred.assign(test_y.size(), fit.coef[0]);
      for (size_t j = 0; j < xs.size(); ++j) {
        for (size_t i = 0; i < pred.size(); ++i) pred[i] += fit.coef[j + 1] * test_x[j][i];
      }
    } else {
      ForestHyper h = hyper;
      h.seed = derive_seed(seed, static_cast<uint64_t>(f));
      const ForestModel model = fit_forest(train_x, train_y, h, xs);
      pred = predict(model, test_x);
    }

    const Metrics m = metrics(test_y, pred);
    mae += m.mae;
    mse += m.mse;
    r2 += m.r2;
  }

  const double kd = static_cast<double>(folds.size());
  return Metrics{mae / kd, mse / kd, r2 / kd};
}

std::vector<ModelConfig> default_configs(uint64_t run_seed,
                                         const std::vector<std::string>& model_features) {
  std::vector<ModelConfig> configs(5);
  const StrategyKind kinds[5] = {StrategyKind::passthrough, StrategyKind::drop_missing,
                                 StrategyKind::global_mean, StrategyKind::monte_carlo,
                                 StrategyKind::model_based};
  for (int64_t i = 0; i < 5; ++i) {
    ModelConfig& c = configs[static_cast<size_t>(i)];
    c.id = i + 1;
    c.strategy.kind = kinds[i];
    c.strategy.seed = derive_seed(run_seed, static_cast<uint64_t>(c.id));
    c.learner = LearnerKind::forest;
  }
  configs[4].strategy.features = model_features;
  return configs;
}

BenchmarkReport run_benchmark(const ObservationFrame& frame, const BenchmarkSpec& spec,
                              const std::vector<ModelConfig>& configs) {
  BenchmarkReport report;
  report.seed = spec.seed;
  report.folds = spec.folds;
  report.response = spec.response;

  report.impute_target = spec.impute_target;
  if (report.impute_target.empty()) {
    for (const auto& name : frame.column_names()) {
      if (frame.role(name) == ColumnRole::target) {
        if (!report.impute_target.empty()) {
          fail(Errc::validation_error, "several target-role columns; name one explicitly");
        }
        report.impute_target = name;
      }
    }
    if (report.impute_target.empty()) {
      fail(Errc::validation_error, "no target-role column to impute; name one explicitly");
    }
  }
  frame.column_index(report.impute_target);
  if (report.response.empty()) fail(Errc::validation_error, "benchmark response column not set");
  frame.column_index(report.response);
  report.regressors = spec.regressors.empty() ? std::vector<std::string>{report.impute_target}
                                              : spec.regressors;
  for (const auto& x : report.regressors) frame.column_index(x);

  report.input_rows = frame.rows();
  const auto& tmask = frame.mask(report.impute_target);
  for (uint8_t b : tmask) report.target_missing += b ? 0 : 1;

  for (const auto& config : configs) {
    ConfigResult res;
    res.id = config.id;
    res.strategy = strategy_name(config.strategy.kind);
    res.learner = learner_name(config.learner);
    try {
      const HybridFrame hybrid = impute(frame, report.impute_target, config.strategy);
      res.rows = hybrid.frame.rows();
      res.synthetic_cells = hybrid.synthetic_count();
      res.unfilled_cells = hybrid.unfilled_rows.size();

      try {
        res.ols = fit_ols_on_frame(hybrid.frame, report.response, report.regressors);
        res.ols_ok = true;
      } catch (const Error& e) {
        res.ols_error = e.what();
      }
      try {
        res.cv = cross_validate(hybrid.frame, report.response, report.regressors, config.learner,
                                config.learner_hyper, spec.folds,
                                derive_seed(spec.seed, 1000 + static_cast<uint64_t>(config.id)));
        res.cv_ok = true;
      } catch (const Error& e) {
        res.cv_error = e.what();
      }
    } catch (const Error& e) {
      res.ols_error = e.what();
      res.cv_error = e.what();
    }
    report.results.push_back(std::move(res));
  }

  report.notes = {
      "imputation runs once on the full dataset before cross-validation, so test-fold cells "
      "influence the imputed values (leakage caveat)",
      "model_based fills the regressor from columns that include the benchmark response "
      "(endogeneity caveat)",
  };
  return report;
}

std::string render_benchmark_report(const BenchmarkReport& report) {
  std::string out;
  out += "benchmark: response = " + report.response + ", imputed column = " +
         report.impute_target + "\n";
  out += "regressors =";
  for (const auto& x : report.regressors) out += " " + x;
  out += "\nfolds = " + std::to_string(report.folds) + "   seed = " + std::to_string(report.seed) +
         "\n";
  out += "input rows = " + std::to_string(report.input_rows) + ", " + report.impute_target +
         " missing = " + std::to_string(report.target_missing) + "\n\n";

  for (const auto& res : report.results) {
    out += "Model " + std::to_string(res.id) + " (" + res.strategy + ", learner " + res.learner +
           ")\n";
    out += "rows = " + std::to_string(res.rows) +
           "   synthetic = " + std::to_string(res.synthetic_cells) +
           "   unfilled = " + std::to_string(res.unfilled_cells) + "\n";
    if (res.ols_ok) {
      out += render_ols_table(res.ols);
    } else {
      out += "OLS: NA (" + res.ols_error + ")\n";
    }
    out += "\n";
  }

  out += "cross-validation summary\n";
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"Model", "Average MAE", "Average MSE", "Average R-squared"});
  for (const auto& res : report.results) {
    if (res.cv_ok) {
      grid.push_back({"Model " + std::to_string(res.id), fixed3(res.cv.mae), fixed3(res.cv.mse),
                      fixed3(res.cv.r2)});
    } else {
      grid.push_back({"Model " + std::to_string(res.id), "NA", "NA", "NA"});
    }
  }
  std::vector<size_t> width(4, 0);
  for (const auto& row : grid) {
    for (size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : grid) {
    std::string line = row[0];
    line.append(width[0] - row[0].size(), ' ');
    for (size_t c = 1; c < 4; ++c) {
      line += "  ";
      line.append(width[c] - row[c].size(), ' ');
      line += row[c];
    }
    out += line + "\n";
  }
  for (const auto& res : report.results) {
    if (!res.cv_ok) {
      out += "Model " + std::to_string(res.id) + " NA: " + res.cv_error + "\n";
    }
  }

  out += "\nnotes:\n";
  for (const auto& note : report.notes) out += "- " + note + "\n";
  return out;
}

std::string benchmark_report_json(const BenchmarkReport& report) {
  nlohmann::json models = nlohmann::json::array();
  for (const auto& res : report.results) {
    nlohmann::json m = {{"id", res.id},
                        {"strategy", res.strategy},
                        {"learner", res.learner},
                        {"rows", res.rows},
                        {"synthetic_cells", res.synthetic_cells},
                        {"unfilled_cells", res.unfilled_cells}};
    if (res.ols_ok) {
      m["ols"] = fit_json(res.ols);
    } else {
      m["ols"] = nullptr;
      m["ols_error"] = res.ols_error;
    }
    if (res.cv_ok) {
      m["cv"] = {{"mae", res.cv.mae}, {"mse", res.cv.mse}, {"r2", num_or_null(res.cv.r2)}};
    } else {
      m["cv"] = nullptr;
      m["cv_error"] = res.cv_error;
    }
    models.push_back(std::move(m));
  }
  nlohmann::json doc = {{"kind", "benchmark_report"},
                        {"seed", report.seed},
                        {"folds", report.folds},
                        {"impute_target", report.impute_target},
                        {"response", report.response},
                        {"regressors", report.regressors},
                        {"input_rows", report.input_rows},
                        {"target_missing", report.target_missing},
                        {"models", std::move(models)},
                        {"notes", report.notes}};
  return doc.dump(2) + "\n";
}

}  // namespace peanut
