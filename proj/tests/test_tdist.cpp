#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "peanut/errors.hpp"
#include "peanut/tdist.hpp"
#include "test_support.hpp"

using namespace peanut;
using testsup::raises;

namespace {

double t_pdf(double x, double df) {
  const double c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                   0.5 * std::log(df * 3.14159265358979323846);
  return std::exp(c - (df + 1.0) / 2.0 * std::log1p(x * x / df));
}

double simpson(double (*f)(double, double), double df, double a, double b) {
  const double m = (a + b) / 2.0;
  return (b - a) / 6.0 * (f(a, df) + 4.0 * f(m, df) + f(b, df));
}

double adaptive(double (*f)(double, double), double df, double a, double b, double whole,
                double tol, int depth) {
  const double m = (a + b) / 2.0;
  const double left = simpson(f, df, a, m);
  const double right = simpson(f, df, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(f, df, a, m, left, tol / 2.0, depth - 1) +
         adaptive(f, df, m, b, right, tol / 2.0, depth - 1);
}

// Quadrature reference for the two-sided tail, accurate to ~1e-11 for the
// df in use (the integrand beyond the cutoff is below 1e-13).
double tail_by_quadrature(double t, double df) {
  const double upper = t + 2000.0;
  return 2.0 * adaptive(t_pdf, df, t, upper, simpson(t_pdf, df, t, upper), 1e-13, 60);
}

}  // namespace

TEST_CASE("incomplete beta agrees with closed forms") {
  CHECK(regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
  for (double x : {0.1, 0.25, 0.5, 0.8, 0.95}) {
    // I_x(1,1) is the uniform CDF; I_x(2,2) = 3x^2 - 2x^3
    CHECK(regularized_incomplete_beta(x, 1.0, 1.0) == doctest::Approx(x).epsilon(1e-12));
    CHECK(regularized_incomplete_beta(x, 2.0, 2.0) ==
          doctest::Approx(3.0 * x * x - 2.0 * x * x * x).epsilon(1e-12));
  }
}

TEST_CASE("incomplete beta satisfies its reflection identity") {
  const double xs[] = {0.05, 0.3, 0.62, 0.9};
  const double as[] = {0.5, 2.0, 7.5};
  const double bs[] = {1.5, 4.0, 53.5};
  for (double x : xs)
    for (double a : as)
      for (double b : bs) {
        const double lhs = regularized_incomplete_beta(x, a, b);
        const double rhs = 1.0 - regularized_incomplete_beta(1.0 - x, b, a);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
      }
}

TEST_CASE("two-sided tail matches the df=1 and df=2 closed forms") {
  for (double t : {0.25, 0.5, 1.0, 2.0, 5.0, 12.0}) {
    const double cauchy = 1.0 - 2.0 / 3.14159265358979323846 * std::atan(t);
    CHECK(student_t_two_sided_p(t, 1) == doctest::Approx(cauchy).epsilon(1e-11));
    const double df2 = 1.0 - t / std::sqrt(t * t + 2.0);
    CHECK(student_t_two_sided_p(t, 2) == doctest::Approx(df2).epsilon(1e-11));
  }
}

TEST_CASE("two-sided tail matches quadrature at moderate df") {
  for (int64_t df : {5, 10, 30, 107}) {
    for (double t : {0.5, 1.0, 2.0, 3.5}) {
      const double ref = tail_by_quadrature(t, double(df));
      CHECK(student_t_two_sided_p(t, df) == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("tail values pinned to the t table") {
  CHECK(student_t_two_sided_p(2.228, 10) == doctest::Approx(0.0500).epsilon(0.01));
  CHECK(std::abs(student_t_two_sided_p(2.228, 10) - 0.05) < 5e-4);
  CHECK(student_t_two_sided_p(0.0, 10) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(student_t_two_sided_p(1e308, 10) < 1e-12);
}

TEST_CASE("tail handles non-finite inputs") {
  CHECK(std::isnan(student_t_two_sided_p(std::nan(""), 10)));
  CHECK(student_t_two_sided_p(std::numeric_limits<double>::infinity(), 10) == 0.0);
}

TEST_CASE("quantiles pinned to the t table") {
  CHECK(std::abs(student_t_quantile(0.975, 10) - 2.228) < 1e-3);
  CHECK(std::abs(student_t_quantile(0.975, 1) - 12.706) < 1e-3);
  CHECK(std::abs(student_t_quantile(0.995, 30) - 2.750) < 1e-3);
  CHECK(std::abs(student_t_quantile(0.975, 107) - 1.98238) < 1e-3);
  CHECK(student_t_quantile(0.5, 10) == doctest::Approx(0.0).epsilon(1e-9));
  // symmetry around the median
  CHECK(student_t_quantile(0.25, 10) ==
        doctest::Approx(-student_t_quantile(0.75, 10)).epsilon(1e-9));
}

TEST_CASE("quantile inverts the tail") {
  for (int64_t df : {1, 2, 5, 10, 30, 100}) {
    for (double p = 0.6; p < 0.9995; p += 0.007) {
      const double t = student_t_quantile(p, df);
      const double back = student_t_two_sided_p(std::abs(t), df);  // 2(1-p)
      const double t2 = student_t_quantile(1.0 - back / 2.0, df);
      CHECK(std::abs(t2 - t) <= 1e-6 * std::max(1.0, std::abs(t)));
    }
  }
}

TEST_CASE("tail is monotone in t and quantile in p") {
  double prev = 2.0;
  for (double t = 0.0; t < 6.0; t += 0.25) {
    const double p = student_t_two_sided_p(t, 7);
    CHECK(p < prev);
    prev = p;
  }
  double prev_q = -100.0;
  for (double p = 0.05; p < 1.0; p += 0.05) {
    const double q = student_t_quantile(p, 7);
    CHECK(q > prev_q);
    prev_q = q;
  }
}

TEST_CASE("t-distribution rejects bad arguments") {
  CHECK(raises(Errc::invalid_df, [] { student_t_two_sided_p(1.0, 0); }));
  CHECK(raises(Errc::invalid_df, [] { student_t_quantile(0.975, 0); }));
  CHECK(raises(Errc::prob_out_of_range, [] { student_t_quantile(0.0, 10); }));
  CHECK(raises(Errc::prob_out_of_range, [] { student_t_quantile(1.0, 10); }));
  CHECK(raises(Errc::prob_out_of_range, [] { student_t_quantile(-0.5, 10); }));
  CHECK(raises(Errc::numeric_error, [] { regularized_incomplete_beta(0.5, 0.0, 1.0); }));
}
