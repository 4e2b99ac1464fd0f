#pragma once

#include <span>

#include "hapaxprior/error.hpp"

namespace hapaxprior {

struct TTestResult {
  double t = 0.0;
  int df = 0;
  double p_two_sided = 1.0;
  double mean_diff = 0.0;
  double sd_diff = 0.0;
};

/// Paired two-sided Student t-test on x - y. Throws std::invalid_argument on
/// a length mismatch or fewer than two pairs, and DataError when the
/// differences are constant but nonzero (t is infinite).
TTestResult paired_t(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// The |t| whose two-sided tail probability is `alpha`.
double student_t_critical(double alpha, double df);

}  // namespace hapaxprior
