#include "peanut/peanut.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "peanut/describe.hpp"
#include "peanut/errors.hpp"
#include "peanut/evaluate.hpp"
#include "peanut/forest.hpp"
#include "peanut/frame_json.hpp"
#include "peanut/impute.hpp"
#include "peanut/ols.hpp"
#include "peanut/run_config.hpp"
#include "peanut/simulate.hpp"

using namespace peanut;

struct pnt_frame {
  HybridFrame h;  // provenance empty for plain frames

  bool is_hybrid() const { return !h.provenance.empty(); }
};

struct pnt_fit {
  OlsFit fit;
};

struct pnt_forest {
  ForestModel model;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

pnt_status status_of(Errc code) {
  switch (code) {
    case Errc::validation_error:
    case Errc::bad_k:
    case Errc::invalid_spec:
    case Errc::invalid_df:
    case Errc::prob_out_of_range:
      return PNT_USAGE;
    default:
      return PNT_DATA;
  }
}

template <typename F>
pnt_status guard(F&& fn) {
  try {
    fn();
    return PNT_OK;
  } catch (const Error& e) {
    set_error(e.what());
    return status_of(e.code());
  } catch (const std::exception& e) {
    set_error(std::string("internal_error: ") + e.what());
    return PNT_INTERNAL;
  } catch (...) {
    set_error("internal_error: unknown failure");
    return PNT_INTERNAL;
  }
}

pnt_status usage_error(const std::string& message) {
  set_error("validation_error: " + message);
  return PNT_USAGE;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ForestHyper hyper_from_params(const pnt_forest_params* p) {
  ForestHyper h;
  if (!p) return h;
  if (p->n_trees > 0) h.n_trees = p->n_trees;
  h.max_depth = p->max_depth > 0 ? p->max_depth : 0;
  if (p->min_samples_leaf > 0) h.min_samples_leaf = p->min_samples_leaf;
  if (p->min_samples_split > 0) h.min_samples_split = p->min_samples_split;
  if (p->max_features && *p->max_features) {
    const std::string mf = p->max_features;
    if (mf == "all") {
      h.max_features = MaxFeatures::all;
    } else if (mf == "sqrt") {
      h.max_features = MaxFeatures::sqrt_count;
    } else {
      size_t used = 0;
      long long count = 0;
      try {
        count = std::stoll(mf, &used);
      } catch (...) {
        used = 0;
      }
      if (used != mf.size() || count < 1) {
        fail(Errc::validation_error, "max_features must be all, sqrt, or a positive integer");
      }
      h.max_features = MaxFeatures::fixed;
      h.max_features_count = count;
    }
  }
  h.bootstrap = p->bootstrap != 0;
  h.seed = p->seed;
  return h;
}

std::vector<std::string> split_csv_list(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::string s = text;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    const std::string item = s.substr(start, comma - start);
    if (!item.empty()) out.push_back(item);
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> name_list(const char* const* x, size_t n_x) {
  std::vector<std::string> out;
  out.reserve(n_x);
  for (size_t i = 0; i < n_x; ++i) {
    if (!x[i]) fail(Errc::validation_error, "null column name");
    out.emplace_back(x[i]);
  }
  return out;
}

SimulationSpec spec_from_params(const pnt_sim_params* p) {
  SimulationSpec spec;
  spec.n_days = p->n_days;
  spec.relation.kind = relation_from_name(p->relation ? p->relation : "linear");
  spec.relation.a = p->a;
  spec.relation.b = p->b;
  spec.ar_phi = p->ar_phi;
  spec.ar_noise_sd = p->ar_noise_sd;
  spec.target_noise_sd = p->target_noise_sd;
  spec.weekly_period = p->weekly_period > 0 ? p->weekly_period : 7;
  spec.seed = p->seed;
  return spec;
}

}  // namespace

extern "C" {

const char* pnt_version(void) { return "0.1.0"; }

const char* pnt_last_error(void) { return g_last_error.c_str(); }

void pnt_string_free(char* s) { delete[] s; }
void pnt_frame_free(pnt_frame* frame) { delete frame; }
void pnt_fit_free(pnt_fit* fit) { delete fit; }
void pnt_forest_free(pnt_forest* forest) { delete forest; }

pnt_status pnt_frame_read(const char* path, pnt_frame** out) {
  if (!path || !out) return usage_error("pnt_frame_read requires path and out");
  return guard([&] {
    auto frame = std::make_unique<pnt_frame>();
    frame->h = document_from_json(read_text_file(path));
    *out = frame.release();
  });
}

pnt_status pnt_frame_write(const pnt_frame* frame, const char* path) {
  if (!frame || !path) return usage_error("pnt_frame_write requires frame and path");
  return guard([&] {
    write_text_file(path, frame->is_hybrid() ? hybrid_to_json(frame->h)
                                             : frame_to_json(frame->h.frame));
  });
}

pnt_status pnt_frame_from_json(const char* text, pnt_frame** out) {
  if (!text || !out) return usage_error("pnt_frame_from_json requires text and out");
  return guard([&] {
    auto frame = std::make_unique<pnt_frame>();
    frame->h = document_from_json(text);
    *out = frame.release();
  });
}

pnt_status pnt_frame_to_json(const pnt_frame* frame, char** out) {
  if (!frame || !out) return usage_error("pnt_frame_to_json requires frame and out");
  return guard([&] {
    *out = copy_string(frame->is_hybrid() ? hybrid_to_json(frame->h)
                                          : frame_to_json(frame->h.frame));
  });
}

size_t pnt_frame_rows(const pnt_frame* frame) { return frame ? frame->h.frame.rows() : 0; }

size_t pnt_frame_column_count(const pnt_frame* frame) {
  return frame ? frame->h.frame.column_count() : 0;
}

const char* pnt_frame_column_name(const pnt_frame* frame, size_t index) {
  if (!frame || index >= frame->h.frame.column_count()) return nullptr;
  return frame->h.frame.column_names()[index].c_str();
}

pnt_status pnt_frame_date_iso(const pnt_frame* frame, size_t row, char* buf, size_t buflen) {
  if (!frame || !buf) return usage_error("pnt_frame_date_iso requires frame and buffer");
  if (row >= frame->h.frame.rows()) return usage_error("row out of range");
  const std::string iso = frame->h.frame.dates()[row].iso();
  if (buflen < iso.size() + 1) return usage_error("date buffer too small (needs 11 bytes)");
  std::memcpy(buf, iso.c_str(), iso.size() + 1);
  return PNT_OK;
}

pnt_status pnt_frame_cell(const pnt_frame* frame, const char* column, size_t row,
                          double* value, int* observed) {
  if (!frame || !column || !value || !observed) {
    return usage_error("pnt_frame_cell requires frame, column, value, observed");
  }
  if (row >= frame->h.frame.rows()) return usage_error("row out of range");
  return guard([&] {
    const auto& f = frame->h.frame;
    f.column_index(column);
    *observed = f.mask(column)[row] ? 1 : 0;
    if (*observed) *value = f.values(column)[row];
  });
}

pnt_status pnt_frame_observed_count(const pnt_frame* frame, const char* column, size_t* out) {
  if (!frame || !column || !out) {
    return usage_error("pnt_frame_observed_count requires frame, column, out");
  }
  return guard([&] {
    const auto& mask = frame->h.frame.mask(column);
    size_t count = 0;
    for (uint8_t b : mask) count += b ? 1 : 0;
    *out = count;
  });
}

int pnt_frame_provenance(const pnt_frame* frame, size_t row) {
  if (!frame || !frame->is_hybrid() || row >= frame->h.provenance.size()) return -1;
  return static_cast<int>(frame->h.provenance[row]);
}

const char* pnt_frame_provenance_column(const pnt_frame* frame) {
  if (!frame || !frame->is_hybrid()) return nullptr;
  return frame->h.target.c_str();
}

pnt_status pnt_ingest(const char* config_path, pnt_frame** out) {
  if (!config_path || !out) return usage_error("pnt_ingest requires config_path and out");
  return guard([&] {
    const RunConfig config = load_config(config_path);
    auto frame = std::make_unique<pnt_frame>();
    frame->h.frame = load_sources(config);
    *out = frame.release();
  });
}

pnt_status pnt_describe_stats_text(const pnt_frame* frame, char** out) {
  if (!frame || !out) return usage_error("pnt_describe_stats_text requires frame and out");
  return guard([&] { *out = copy_string(render_stats_table(descriptive_stats(frame->h.frame))); });
}

pnt_status pnt_describe_stats_json(const pnt_frame* frame, char** out) {
  if (!frame || !out) return usage_error("pnt_describe_stats_json requires frame and out");
  return guard([&] { *out = copy_string(stats_json(descriptive_stats(frame->h.frame))); });
}

pnt_status pnt_missingness_text(const pnt_frame* frame, char** out) {
  if (!frame || !out) return usage_error("pnt_missingness_text requires frame and out");
  return guard(
      [&] { *out = copy_string(render_missingness_table(missingness_summary(frame->h.frame))); });
}

pnt_status pnt_missingness_json(const pnt_frame* frame, char** out) {
  if (!frame || !out) return usage_error("pnt_missingness_json requires frame and out");
  return guard([&] { *out = copy_string(missingness_json(missingness_summary(frame->h.frame))); });
}

pnt_status pnt_scatter_json(const pnt_frame* frame, const char* column, char** out) {
  if (!frame || !column || !out) {
    return usage_error("pnt_scatter_json requires frame, column, out");
  }
  return guard([&] { *out = copy_string(scatter_json(scatter_export(frame->h.frame, column), column)); });
}

void pnt_forest_params_init(pnt_forest_params* params) {
  if (!params) return;
  params->n_trees = 100;
  params->max_depth = 0;
  params->min_samples_leaf = 1;
  params->min_samples_split = 2;
  params->max_features = nullptr;
  params->bootstrap = 1;
  params->seed = 0;
}

pnt_status pnt_impute(const pnt_frame* frame, const char* target, const char* strategy,
                      int64_t draws, uint64_t seed, const char* features,
                      const pnt_forest_params* forest_params, pnt_frame** out) {
  if (!frame || !target || !strategy || !out) {
    return usage_error("pnt_impute requires frame, target, strategy, out");
  }
  return guard([&] {
    ImputationStrategy s;
    s.kind = strategy_from_name(strategy);
    s.draws = draws > 0 ? draws : 100;
    s.seed = seed;
    s.features = split_csv_list(features);
    s.hyper = hyper_from_params(forest_params);
    auto result = std::make_unique<pnt_frame>();
    result->h = impute(frame->h.frame, target, s);
    *out = result.release();
  });
}

pnt_status pnt_fit_ols(const pnt_frame* frame, const char* y, const char* const* x,
                       size_t n_x, pnt_fit** out) {
  if (!frame || !y || !x || n_x == 0 || !out) {
    return usage_error("pnt_fit_ols requires frame, y, at least one x, out");
  }
  return guard([&] {
    auto fit = std::make_unique<pnt_fit>();
    fit->fit = fit_ols_on_frame(frame->h.frame, y, name_list(x, n_x));
    *out = fit.release();
  });
}

pnt_status pnt_fit_table(const pnt_fit* fit, char** out) {
  if (!fit || !out) return usage_error("pnt_fit_table requires fit and out");
  return guard([&] { *out = copy_string(render_ols_table(fit->fit)); });
}

pnt_status pnt_fit_json(const pnt_fit* fit, char** out) {
  if (!fit || !out) return usage_error("pnt_fit_json requires fit and out");
  return guard([&] {
    std::string text = "{\n";
    const OlsFit& f = fit->fit;
    char buf[64];
    auto num = [&](double v) -> std::string {
      if (std::isnan(v)) return "null";
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      return buf;
    };
    text += "  \"n\": " + std::to_string(f.n) + ",\n";
    text += "  \"df\": " + std::to_string(f.df) + ",\n";
    text += "  \"r2\": " + num(f.r2) + ",\n";
    text += "  \"sigma2\": " + num(f.sigma2) + ",\n";
    text += "  \"rss\": " + num(f.rss) + ",\n";
    text += "  \"coefficients\": [\n";
    for (size_t j = 0; j < f.names.size(); ++j) {
      text += "    {\"name\": \"" + f.names[j] + "\", \"coef\": " + num(f.coef[j]) +
              ", \"se\": " + num(f.se[j]) + ", \"t\": " + num(f.t[j]) +
              ", \"p\": " + num(f.p[j]) + ", \"ci_low\": " + num(f.ci_low[j]) +
              ", \"ci_high\": " + num(f.ci_high[j]) + "}";
      text += j + 1 < f.names.size() ? ",\n" : "\n";
    }
    text += "  ]\n}\n";
    *out = copy_string(text);
  });
}

size_t pnt_fit_term_count(const pnt_fit* fit) { return fit ? fit->fit.names.size() : 0; }

const char* pnt_fit_term_name(const pnt_fit* fit, size_t index) {
  if (!fit || index >= fit->fit.names.size()) return nullptr;
  return fit->fit.names[index].c_str();
}

double pnt_fit_coef(const pnt_fit* fit, size_t index) {
  if (!fit || index >= fit->fit.coef.size()) return std::numeric_limits<double>::quiet_NaN();
  return fit->fit.coef[index];
}

double pnt_fit_se(const pnt_fit* fit, size_t index) {
  if (!fit || index >= fit->fit.se.size()) return std::numeric_limits<double>::quiet_NaN();
  return fit->fit.se[index];
}

double pnt_fit_t(const pnt_fit* fit, size_t index) {
  if (!fit || index >= fit->fit.t.size()) return std::numeric_limits<double>::quiet_NaN();
  return fit->fit.t[index];
}

double pnt_fit_p(const pnt_fit* fit, size_t index) {
  if (!fit || index >= fit->fit.p.size()) return std::numeric_limits<double>::quiet_NaN();
  return fit->fit.p[index];
}

pnt_status pnt_fit_ci(const pnt_fit* fit, size_t index, double* low, double* high) {
  if (!fit || !low || !high) return usage_error("pnt_fit_ci requires fit, low, high");
  if (index >= fit->fit.ci_low.size()) return usage_error("coefficient index out of range");
  *low = fit->fit.ci_low[index];
  *high = fit->fit.ci_high[index];
  return PNT_OK;
}

int64_t pnt_fit_n(const pnt_fit* fit) { return fit ? fit->fit.n : 0; }
int64_t pnt_fit_df(const pnt_fit* fit) { return fit ? fit->fit.df : 0; }

double pnt_fit_r2(const pnt_fit* fit) {
  return fit ? fit->fit.r2 : std::numeric_limits<double>::quiet_NaN();
}

double pnt_fit_sigma2(const pnt_fit* fit) {
  return fit ? fit->fit.sigma2 : std::numeric_limits<double>::quiet_NaN();
}

pnt_status pnt_forest_train(const pnt_frame* frame, const char* y, const char* const* x,
                            size_t n_x, const pnt_forest_params* params, pnt_forest** out) {
  if (!frame || !y || !x || n_x == 0 || !out) {
    return usage_error("pnt_forest_train requires frame, y, at least one x, out");
  }
  return guard([&] {
    const std::vector<std::string> xs = name_list(x, n_x);
    std::set<std::string> needed(xs.begin(), xs.end());
    needed.insert(y);
    const ObservationFrame complete = complete_rows(frame->h.frame, needed);

    std::vector<std::vector<double>> train_x;
    for (const auto& name : xs) train_x.push_back(complete.values(name));
    auto forest = std::make_unique<pnt_forest>();
    forest->model = fit_forest(train_x, complete.values(y), hyper_from_params(params), xs);
    *out = forest.release();
  });
}

pnt_status pnt_forest_save(const pnt_forest* forest, const char* path) {
  if (!forest || !path) return usage_error("pnt_forest_save requires forest and path");
  return guard([&] { write_text_file(path, forest_to_json(forest->model)); });
}

pnt_status pnt_forest_load(const char* path, pnt_forest** out) {
  if (!path || !out) return usage_error("pnt_forest_load requires path and out");
  return guard([&] {
    auto forest = std::make_unique<pnt_forest>();
    forest->model = forest_from_json(read_text_file(path));
    *out = forest.release();
  });
}

pnt_status pnt_forest_predict_row(const pnt_forest* forest, const double* row, size_t n,
                                  double* out) {
  if (!forest || !row || !out) {
    return usage_error("pnt_forest_predict_row requires forest, row, out");
  }
  if (n != forest->model.feature_names.size()) {
    set_error("feature_count_mismatch: model expects " +
              std::to_string(forest->model.feature_names.size()) + " features, got " +
              std::to_string(n));
    return PNT_DATA;
  }
  return guard([&] {
    double sum = 0.0;
    for (const auto& tree : forest->model.trees) sum += predict_tree(tree, row);
    *out = sum / static_cast<double>(forest->model.trees.size());
  });
}

pnt_status pnt_forest_predict_frame(const pnt_forest* forest, const pnt_frame* frame,
                                    char** out) {
  if (!forest || !frame || !out) {
    return usage_error("pnt_forest_predict_frame requires forest, frame, out");
  }
  return guard([&] {
    const ObservationFrame& f = frame->h.frame;
    for (const auto& name : forest->model.feature_names) f.column_index(name);

    std::string dates = "[";
    std::vector<std::vector<double>> cols(forest->model.feature_names.size());
    std::vector<size_t> rows;
    for (size_t r = 0; r < f.rows(); ++r) {
      bool complete = true;
      for (const auto& name : forest->model.feature_names) {
        if (!f.mask(name)[r]) {
          complete = false;
          break;
        }
      }
      if (!complete) continue;
      rows.push_back(r);
      for (size_t c = 0; c < cols.size(); ++c) {
        cols[c].push_back(f.values(forest->model.feature_names[c])[r]);
      }
    }
    const std::vector<double> pred = predict(forest->model, cols);

    std::string text = "{\n  \"kind\": \"predictions\",\n  \"dates\": [";
    for (size_t i = 0; i < rows.size(); ++i) {
      text += i ? ", " : "";
      text += "\"" + f.dates()[rows[i]].iso() + "\"";
    }
    text += "],\n  \"values\": [";
    char buf[64];
    for (size_t i = 0; i < pred.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", pred[i]);
      text += i ? ", " : "";
      text += buf;
    }
    text += "]\n}\n";
    *out = copy_string(text);
  });
}

pnt_status pnt_bench(const char* config_path, int64_t folds_override,
                     uint64_t seed_override, int use_seed_override,
                     const char* out_dir_override) {
  if (!config_path) return usage_error("pnt_bench requires config_path");
  return guard([&] {
    RunConfig config = load_config(config_path);
    if (folds_override > 0) {
      if (folds_override < 2) fail(Errc::validation_error, "folds");
      config.bench.folds = folds_override;
    }
    if (use_seed_override) config.bench.seed = seed_override;
    if (out_dir_override && *out_dir_override) config.output_dir = out_dir_override;

    const ObservationFrame frame = load_sources(config);
    const std::vector<ModelConfig> configs = configs_for_run(config);
    const BenchmarkReport report = run_benchmark(frame, config.bench, configs);

    std::filesystem::create_directories(config.output_dir);
    const std::filesystem::path dir(config.output_dir);
    write_text_file((dir / "report.txt").string(), render_benchmark_report(report));
    write_text_file((dir / "report.json").string(), benchmark_report_json(report));
    for (const auto& res : report.results) {
      const std::string name = "ols_model_" + std::to_string(res.id) + ".txt";
      const std::string body =
          res.ols_ok ? render_ols_table(res.ols) : "OLS: NA (" + res.ols_error + ")\n";
      write_text_file((dir / name).string(), body);
    }
  });
}

void pnt_sim_params_init(pnt_sim_params* params) {
  if (!params) return;
  params->n_days = 1253;
  params->relation = "tanh";
  params->a = 1.0;
  params->b = 2.0;
  params->ar_phi = 0.9;
  params->ar_noise_sd = 0.25;
  params->target_noise_sd = 0.15;
  params->weekly_period = 7;
  params->seed = 0;
}

pnt_status pnt_simulate(const pnt_sim_params* params, pnt_frame** full, pnt_frame** masked) {
  if (!params || !full || !masked) {
    return usage_error("pnt_simulate requires params, full, masked");
  }
  return guard([&] {
    const SimulationTruth truth = generate(spec_from_params(params));
    auto f = std::make_unique<pnt_frame>();
    auto m = std::make_unique<pnt_frame>();
    f->h.frame = truth.full;
    m->h.frame = truth.masked;
    *full = f.release();
    *masked = m.release();
  });
}

pnt_status pnt_simulate_to_dir(const pnt_sim_params* params, const char* out_dir) {
  if (!params || !out_dir) return usage_error("pnt_simulate_to_dir requires params and out_dir");
  return guard([&] {
    const SimulationTruth truth = generate(spec_from_params(params));
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_frame_file((dir / "truth_full.json").string(), truth.full);
    write_frame_file((dir / "truth_masked.json").string(), truth.masked);
  });
}

}  // extern "C"
