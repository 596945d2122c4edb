#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peanut/frame.hpp"

namespace peanut {

/// Least-squares fit with inference. Intercept is always first under the
/// name "const".
struct OlsFit {
  std::vector<std::string> names;
  std::vector<double> coef;
  std::vector<double> se;
  std::vector<double> t;
  std::vector<double> p;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  int64_t n = 0;
  int64_t df = 0;
  double r2 = 0.0;
  double sigma2 = 0.0;
  double rss = 0.0;
};

/// Fits y ~ 1 + xs via Householder QR. Inputs must be complete (no NaN);
/// use fit_ols_on_frame for masked data. names labels the regressors, in
/// order, excluding the intercept.
/// Throws: dimension_mismatch, too_few_rows (n <= k+1), rank_deficient,
/// missing_values_present (non-finite input).
OlsFit fit_ols(const std::vector<double>& y,
               const std::vector<std::vector<double>>& xs,
               const std::vector<std::string>& names);

/// Complete-case fit on a frame: rows missing y or any x are dropped first.
OlsFit fit_ols_on_frame(const ObservationFrame& frame, const std::string& y_name,
                        const std::vector<std::string>& x_names);

/// Coefficient table in the familiar layout:
///   coef (4 dp, *** when p < 0.01), std err / t / P>|t| (3 dp),
///   95% interval bounds (3 dp).
std::string render_ols_table(const OlsFit& fit);

}  // namespace peanut
