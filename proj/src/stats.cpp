#include "hapaxprior/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hapaxprior {
namespace {

// Continued fraction for I_x(a, b) by the modified Lentz method; converges
// quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
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
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta needs a, b > 0");
  if (x < 0.0 || x > 1.0 || std::isnan(x)) {
    throw std::invalid_argument("incomplete_beta needs x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
  if (std::isnan(t)) throw std::invalid_argument("t is NaN");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

double student_t_critical(double alpha, double df) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_two_sided_p(hi, df) > alpha) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (student_t_two_sided_p(mid, df) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TTestResult paired_t(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("paired t-test needs series of equal length");
  }
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("paired t-test needs at least two pairs");

  std::vector<double> d(n);
  std::transform(x.begin(), x.end(), y.begin(), d.begin(), std::minus<>());
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  double max_abs = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss += (d[i] - mean) * (d[i] - mean);
    max_abs = std::max(max_abs, std::fabs(d[i]));
    scale = std::max({scale, std::fabs(x[i]), std::fabs(y[i])});
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  constexpr double kNoise = 8.0 * std::numeric_limits<double>::epsilon();

  TTestResult result;
  result.df = static_cast<int>(n - 1);
  result.mean_diff = mean;
  result.sd_diff = sd;

  // Differences at rounding-noise level of the inputs count as zero.
  if (max_abs <= kNoise * scale) {
    result.t = 0.0;
    result.p_two_sided = 1.0;
    return result;
  }
  if (sd <= kNoise * max_abs) {
    throw DataError("paired t-test: differences are constant and nonzero, t is infinite");
  }
  result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  result.p_two_sided = student_t_two_sided_p(result.t, result.df);
  return result;
}

}  // namespace hapaxprior
