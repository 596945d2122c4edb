#include "peanut/tdist.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "peanut/errors.hpp"

namespace peanut {

namespace {

// Lentz's algorithm for the continued fraction of I_x(a,b).
double beta_cf(double x, double a, double b) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) fail(Errc::numeric_error, "beta shape parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);

  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(x, a, b) / a;
  }
  return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t_abs, int64_t df) {
  if (df < 1) fail(Errc::invalid_df, "t distribution needs df >= 1, got " + std::to_string(df));
  if (std::isnan(t_abs)) return std::numeric_limits<double>::quiet_NaN();
  t_abs = std::fabs(t_abs);
  if (std::isinf(t_abs)) return 0.0;
  const double v = static_cast<double>(df);
  const double x = v / (v + t_abs * t_abs);
  return regularized_incomplete_beta(x, v / 2.0, 0.5);
}

double student_t_quantile(double prob, int64_t df) {
  if (df < 1) fail(Errc::invalid_df, "t distribution needs df >= 1, got " + std::to_string(df));
  if (!(prob > 0.0 && prob < 1.0)) {
    fail(Errc::prob_out_of_range, "quantile probability must lie in (0,1)");
  }
  if (prob == 0.5) return 0.0;
  if (prob < 0.5) return -student_t_quantile(1.0 - prob, df);

  // P(T <= q) = prob  <=>  two-sided tail of q equals 2(1-prob).
  const double tail = 2.0 * (1.0 - prob);
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_two_sided_p(hi, df) > tail) {
    hi *= 2.0;
    if (hi > 1e12) fail(Errc::numeric_error, "t quantile bracket failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (student_t_two_sided_p(mid, df) > tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace peanut
