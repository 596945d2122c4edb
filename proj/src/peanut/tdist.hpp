#pragma once

#include <cstdint>

namespace peanut {

/// Regularized incomplete beta function I_x(a, b), by the continued
/// fraction with the symmetry split at x = (a+1)/(a+b+2).
double regularized_incomplete_beta(double x, double a, double b);

/// Two-sided tail P(|T| > t) of Student's t with df degrees of freedom,
///   P = I_{df/(df+t^2)}(df/2, 1/2).
/// Absolute error below 1e-10 over df >= 1.
double student_t_two_sided_p(double t_abs, int64_t df);

/// Inverse CDF. student_t_quantile(0.975, df) is the half-width multiplier
/// of a 95% confidence interval. Monotone bisection on the tail function.
double student_t_quantile(double prob, int64_t df);

}  // namespace peanut
