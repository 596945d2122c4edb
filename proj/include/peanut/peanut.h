#ifndef PEANUT_H
#define PEANUT_H

/* C interface to the peanut toolkit. All entry points return pnt_status;
 * on failure pnt_last_error() holds a one-line diagnostic of the form
 * "error_name: detail" until the next failing call on the same thread.
 * Out-parameters are written only on PNT_OK. Strings returned through
 * char** out-parameters belong to the caller; release them with
 * pnt_string_free. Handles are released with their matching _free call.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pnt_status {
  PNT_OK = 0,
  PNT_USAGE = 1, /* bad arguments or configuration */
  PNT_DATA = 2,  /* input data unreadable, malformed, or unusable */
  PNT_INTERNAL = 3
} pnt_status;

typedef struct pnt_frame pnt_frame;   /* observation frame, possibly with provenance */
typedef struct pnt_fit pnt_fit;       /* least-squares fit */
typedef struct pnt_forest pnt_forest; /* random-forest model */

const char* pnt_version(void);
const char* pnt_last_error(void);

void pnt_string_free(char* s);
void pnt_frame_free(pnt_frame* frame);
void pnt_fit_free(pnt_fit* fit);
void pnt_forest_free(pnt_forest* forest);

/* ---- frames ---------------------------------------------------------- */

pnt_status pnt_frame_read(const char* path, pnt_frame** out);
pnt_status pnt_frame_write(const pnt_frame* frame, const char* path);
pnt_status pnt_frame_from_json(const char* text, pnt_frame** out);
pnt_status pnt_frame_to_json(const pnt_frame* frame, char** out);

size_t pnt_frame_rows(const pnt_frame* frame);
size_t pnt_frame_column_count(const pnt_frame* frame);
/* Borrowed pointer, valid while the frame lives. NULL on bad index. */
const char* pnt_frame_column_name(const pnt_frame* frame, size_t index);
pnt_status pnt_frame_date_iso(const pnt_frame* frame, size_t row, char* buf, size_t buflen);
/* observed receives 0/1; value is written only for observed cells. */
pnt_status pnt_frame_cell(const pnt_frame* frame, const char* column, size_t row,
                          double* value, int* observed);
pnt_status pnt_frame_observed_count(const pnt_frame* frame, const char* column, size_t* out);

/* Provenance of the imputed column: 0 real, 1 synthetic, 2 missing.
 * -1 when the frame carries no provenance or the row is out of range. */
int pnt_frame_provenance(const pnt_frame* frame, size_t row);
/* Imputed column name, or NULL for a plain frame. */
const char* pnt_frame_provenance_column(const pnt_frame* frame);

/* ---- ingest ---------------------------------------------------------- */

/* Parses the sources named by a run-config file and merges them into one
 * frame (weekly columns spread over the daily date index). */
pnt_status pnt_ingest(const char* config_path, pnt_frame** out);

/* ---- describe -------------------------------------------------------- */

pnt_status pnt_describe_stats_text(const pnt_frame* frame, char** out);
pnt_status pnt_describe_stats_json(const pnt_frame* frame, char** out);
pnt_status pnt_missingness_text(const pnt_frame* frame, char** out);
pnt_status pnt_missingness_json(const pnt_frame* frame, char** out);
pnt_status pnt_scatter_json(const pnt_frame* frame, const char* column, char** out);

/* ---- imputation ------------------------------------------------------ */

typedef struct pnt_forest_params {
  int64_t n_trees;           /* <= 0: 100 */
  int64_t max_depth;         /* 0: unlimited */
  int64_t min_samples_leaf;  /* <= 0: 1 */
  int64_t min_samples_split; /* <= 0: 2 */
  const char* max_features;  /* NULL or "all", "sqrt", or an integer */
  int bootstrap;             /* 0 or 1 */
  uint64_t seed;
} pnt_forest_params;

void pnt_forest_params_init(pnt_forest_params* params);

/* strategy: passthrough | drop | mean | mc | model (long names accepted).
 * draws applies to mc (<= 0: 100); seed to mc and model. features is a
 * comma-separated list for model (NULL: every feature-role column);
 * forest_params configures the model forest (NULL: defaults). */
pnt_status pnt_impute(const pnt_frame* frame, const char* target, const char* strategy,
                      int64_t draws, uint64_t seed, const char* features,
                      const pnt_forest_params* forest_params, pnt_frame** out);

/* ---- OLS ------------------------------------------------------------- */

pnt_status pnt_fit_ols(const pnt_frame* frame, const char* y, const char* const* x,
                       size_t n_x, pnt_fit** out);
pnt_status pnt_fit_table(const pnt_fit* fit, char** out);
pnt_status pnt_fit_json(const pnt_fit* fit, char** out);

size_t pnt_fit_term_count(const pnt_fit* fit);
const char* pnt_fit_term_name(const pnt_fit* fit, size_t index);
double pnt_fit_coef(const pnt_fit* fit, size_t index);
double pnt_fit_se(const pnt_fit* fit, size_t index);
double pnt_fit_t(const pnt_fit* fit, size_t index);
double pnt_fit_p(const pnt_fit* fit, size_t index);
pnt_status pnt_fit_ci(const pnt_fit* fit, size_t index, double* low, double* high);
int64_t pnt_fit_n(const pnt_fit* fit);
int64_t pnt_fit_df(const pnt_fit* fit);
double pnt_fit_r2(const pnt_fit* fit);
double pnt_fit_sigma2(const pnt_fit* fit);

/* ---- forests --------------------------------------------------------- */

/* Trains on the frame's rows where y and every x are observed. */
pnt_status pnt_forest_train(const pnt_frame* frame, const char* y, const char* const* x,
                            size_t n_x, const pnt_forest_params* params, pnt_forest** out);
pnt_status pnt_forest_save(const pnt_forest* forest, const char* path);
pnt_status pnt_forest_load(const char* path, pnt_forest** out);
/* row holds one value per training feature, in training order. */
pnt_status pnt_forest_predict_row(const pnt_forest* forest, const double* row, size_t n,
                                  double* out);
/* JSON {kind:"predictions", dates, values} over rows with all features
 * observed. */
pnt_status pnt_forest_predict_frame(const pnt_forest* forest, const pnt_frame* frame,
                                    char** out);

/* ---- benchmark ------------------------------------------------------- */

/* Full five-model run driven by a config file. Writes report.txt,
 * report.json, and ols_model_<id>.txt into the output directory.
 * folds_override/seed_override apply when positive / use_seed_override is
 * nonzero; out_dir_override (optional) replaces the configured directory. */
pnt_status pnt_bench(const char* config_path, int64_t folds_override,
                     uint64_t seed_override, int use_seed_override,
                     const char* out_dir_override);

/* ---- simulation ------------------------------------------------------ */

typedef struct pnt_sim_params {
  int64_t n_days;
  const char* relation; /* linear | sine | tanh */
  double a;
  double b;
  double ar_phi;
  double ar_noise_sd;
  double target_noise_sd;
  int64_t weekly_period; /* <= 0: 7 */
  uint64_t seed;
} pnt_sim_params;

void pnt_sim_params_init(pnt_sim_params* params);

pnt_status pnt_simulate(const pnt_sim_params* params, pnt_frame** full, pnt_frame** masked);
/* Writes truth_full.json and truth_masked.json into out_dir. */
pnt_status pnt_simulate_to_dir(const pnt_sim_params* params, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* PEANUT_H */
