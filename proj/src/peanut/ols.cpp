#include "peanut/ols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "peanut/errors.hpp"
#include "peanut/tdist.hpp"

namespace peanut {

namespace {

constexpr double kRankTol = 1e-12;

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

OlsFit fit_ols(const std::vector<double>& y,
               const std::vector<std::vector<double>>& xs,
               const std::vector<std::string>& names) {
  const size_t n = y.size();
  const size_t k = xs.size() + 1;
  if (names.size() != xs.size()) fail(Errc::dimension_mismatch, "one name per regressor expected");
  for (const auto& x : xs) {
    if (x.size() != n) {
      fail(Errc::dimension_mismatch, "regressor length " + std::to_string(x.size()) +
                                         " vs " + std::to_string(n) + " responses");
    }
  }
  if (n <= k) {
    fail(Errc::too_few_rows,
         "need more than " + std::to_string(k) + " rows, have " + std::to_string(n));
  }
  for (double v : y) {
    if (!std::isfinite(v)) fail(Errc::missing_values_present, "non-finite response value");
  }
  for (const auto& x : xs) {
    for (double v : x) {
      if (!std::isfinite(v)) fail(Errc::missing_values_present, "non-finite regressor value");
    }
  }

  // Design matrix, column major, intercept first; y carried as an extra
  // column so the factorization produces Q'y alongside R.
  std::vector<std::vector<double>> a(k + 1);
  a[0].assign(n, 1.0);
  for (size_t j = 0; j < xs.size(); ++j) a[j + 1] = xs[j];
  a[k] = y;

  for (size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (size_t i = j; i < n; ++i) norm += a[j][i] * a[j][i];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    if (a[j][j] > 0.0) norm = -norm;

    std::vector<double> v(n - j);
    v[0] = a[j][j] - norm;
    for (size_t i = j + 1; i < n; ++i) v[i - j] = a[j][i];
    double vtv = 0.0;
    for (double w : v) vtv += w * w;
    a[j][j] = norm;
    for (size_t i = j + 1; i < n; ++i) a[j][i] = 0.0;
    if (vtv == 0.0) continue;

    for (size_t c = j + 1; c <= k; ++c) {
      double dot = 0.0;
      for (size_t i = j; i < n; ++i) dot += v[i - j] * a[c][i];
      const double scale = 2.0 * dot / vtv;
      for (size_t i = j; i < n; ++i) a[c][i] -= scale * v[i - j];
    }
  }

  double dmax = 0.0;
  for (size_t j = 0; j < k; ++j) dmax = std::max(dmax, std::fabs(a[j][j]));
  for (size_t j = 0; j < k; ++j) {
    if (std::fabs(a[j][j]) <= kRankTol * dmax) {
      fail(Errc::rank_deficient, "design matrix column " + std::to_string(j) +
                                     " is linearly dependent");
    }
  }

  std::vector<double> beta(k);
  for (size_t j = k; j-- > 0;) {
    double s = a[k][j];
    for (size_t c = j + 1; c < k; ++c) s -= a[c][j] * beta[c];
    beta[j] = s / a[j][j];
  }

  double rss = 0.0;
  for (size_t i = k; i < n; ++i) rss += a[k][i] * a[k][i];

  // W = R^-1, so (X'X)^-1 = W W' and its diagonal is the row sums of W^2.
  std::vector<std::vector<double>> w(k, std::vector<double>(k, 0.0));
  for (size_t c = k; c-- > 0;) {
    w[c][c] = 1.0 / a[c][c];
    for (size_t r = c; r-- > 0;) {
      double s = 0.0;
      for (size_t m = r + 1; m <= c; ++m) s += a[m][r] * w[c][m];
      w[c][r] = -s / a[r][r];
    }
  }

  OlsFit fit;
  fit.names.reserve(k);
  fit.names.push_back("const");
  for (const auto& nm : names) fit.names.push_back(nm);
  fit.coef = beta;
  fit.n = static_cast<int64_t>(n);
  fit.df = static_cast<int64_t>(n - k);
  fit.rss = rss;
  fit.sigma2 = rss / static_cast<double>(fit.df);

  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y /= static_cast<double>(n);
  double tss = 0.0;
  for (double v : y) tss += (v - mean_y) * (v - mean_y);
  fit.r2 = tss > 0.0 ? 1.0 - rss / tss : std::numeric_limits<double>::quiet_NaN();

  const double q = student_t_quantile(0.975, fit.df);
  fit.se.resize(k);
  fit.t.resize(k);
  fit.p.resize(k);
  fit.ci_low.resize(k);
  fit.ci_high.resize(k);
  for (size_t j = 0; j < k; ++j) {
    double diag = 0.0;
    for (size_t c = j; c < k; ++c) diag += w[c][j] * w[c][j];
    fit.se[j] = std::sqrt(fit.sigma2 * diag);
    if (fit.se[j] > 0.0) {
      fit.t[j] = beta[j] / fit.se[j];
      fit.p[j] = student_t_two_sided_p(std::fabs(fit.t[j]), fit.df);
    } else {
      fit.t[j] = std::numeric_limits<double>::quiet_NaN();
      fit.p[j] = std::numeric_limits<double>::quiet_NaN();
    }
    fit.ci_low[j] = beta[j] - q * fit.se[j];
    fit.ci_high[j] = beta[j] + q * fit.se[j];
  }
  return fit;
}

OlsFit fit_ols_on_frame(const ObservationFrame& frame, const std::string& y_name,
                        const std::vector<std::string>& x_names) {
  std::set<std::string> needed(x_names.begin(), x_names.end());
  needed.insert(y_name);
  const ObservationFrame complete = complete_rows(frame, needed);

  std::vector<double> y = complete.values(y_name);
  std::vector<std::vector<double>> xs;
  xs.reserve(x_names.size());
  for (const auto& nm : x_names) xs.push_back(complete.values(nm));
  return fit_ols(y, xs, x_names);
}

std::string render_ols_table(const OlsFit& fit) {
  const size_t k = fit.names.size();
  const std::vector<std::string> header = {"", "coef", "std err", "t",
                                           "P>|t|", "[0.025", "0.975]"};
  std::vector<std::vector<std::string>> rows;
  rows.push_back(header);
  for (size_t j = 0; j < k; ++j) {
    std::string c = fixed(fit.coef[j], 4);
    if (!std::isnan(fit.p[j]) && fit.p[j] < 0.01) c += "***";
    rows.push_back({fit.names[j], c, fixed(fit.se[j], 3), fixed(fit.t[j], 3),
                    fixed(fit.p[j], 3), fixed(fit.ci_low[j], 3),
                    fixed(fit.ci_high[j], 3)});
  }

  std::vector<size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  size_t total = 0;
  for (size_t c = 0; c < width.size(); ++c) total += width[c] + (c ? 2 : 0);

  std::string out(total, '=');
  out += '\n';
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string line = row[0];
    line.append(width[0] - row[0].size(), ' ');
    for (size_t c = 1; c < row.size(); ++c) {
      line += "  ";
      line.append(width[c] - row[c].size(), ' ');
      line += row[c];
    }
    out += line;
    out += '\n';
    if (r == 0) {
      out.append(total, '-');
      out += '\n';
    }
  }
  out.append(total, '=');
  out += '\n';
  out += "n = " + std::to_string(fit.n) + "   df = " + std::to_string(fit.df) +
         "   R^2 = " + fixed(fit.r2, 3) + "\n";
  return out;
}

}  // namespace peanut
