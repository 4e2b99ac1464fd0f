#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "hapaxprior/stats.hpp"

using namespace hapaxprior;

TEST_CASE("paired t closed form") {
  // d = (1, 2, 3): mean 2, sd 1, t = 2 * sqrt(3).
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> y{0, 0, 0};
  const auto r = paired_t(x, y);
  CHECK(r.df == 2);
  CHECK(r.mean_diff == doctest::Approx(2.0));
  CHECK(r.sd_diff == doctest::Approx(1.0));
  CHECK(std::fabs(r.t - 3.4641016151377544) < 1e-9);
  // Two-sided p for t = 2 sqrt(3), df 2 is 1 - t / sqrt(t^2 + 2) = 1 - sqrt(6/7).
  CHECK(r.p_two_sided == doctest::Approx(1.0 - std::sqrt(6.0 / 7.0)).epsilon(1e-10));
}

TEST_CASE("paired t degenerate inputs") {
  const std::vector<double> a{1.5, 2.5, 7.0};
  const auto same = paired_t(a, a);
  CHECK(same.t == 0.0);
  CHECK(same.p_two_sided == 1.0);

  const std::vector<double> x{2, 3, 4, 5};
  const std::vector<double> y{1, 2, 3, 4};
  CHECK_THROWS_AS(paired_t(x, y), DataError);

  CHECK_THROWS_AS(paired_t(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
  CHECK_THROWS_AS(paired_t(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
}

TEST_CASE("paired t symmetries") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + rng() % 15;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = noise(rng) + 0.3;
      y[i] = noise(rng);
    }
    const auto r = paired_t(x, y);
    const auto flipped = paired_t(y, x);
    CHECK(flipped.t == doctest::Approx(-r.t));
    CHECK(flipped.p_two_sided == doctest::Approx(r.p_two_sided));
    CHECK(r.df == static_cast<int>(n) - 1);
    CHECK((r.p_two_sided >= 0.0 && r.p_two_sided <= 1.0));

    auto xs = x, ys = y;
    for (auto& v : xs) v += 17.25;
    for (auto& v : ys) v += 17.25;
    CHECK(paired_t(xs, ys).t == doctest::Approx(r.t).epsilon(1e-9));

    for (auto& v : xs) v = (v - 17.25) * 3.5;
    for (auto& v : ys) v = (v - 17.25) * 3.5;
    CHECK(paired_t(xs, ys).t == doctest::Approx(r.t).epsilon(1e-9));
  }
}

TEST_CASE("incomplete beta edge values") {
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1, 1) = x; I_x(a, 1) = x^a.
  CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(incomplete_beta(3.0, 1.0, 0.6) == doctest::Approx(0.216).epsilon(1e-14));
  // Symmetry I_x(a, b) = 1 - I_{1-x}(b, a).
  CHECK(incomplete_beta(2.5, 4.0, 0.3) == doctest::Approx(1.0 - incomplete_beta(4.0, 2.5, 0.7)));
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(incomplete_beta(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("t tail agrees with an independent implementation") {
  // Boost's Student t distribution is the oracle here.
  double worst = 0.0;
  for (int df = 1; df <= 1000; df += (df < 30 ? 1 : 7)) {
    boost::math::students_t_distribution<double> dist(df);
    for (double t : {0.0, 0.1, 0.5, 1.0, 1.96, 2.262, 3.0, 5.0, 10.0, 40.0}) {
      const double expected = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
      worst = std::max(worst, std::fabs(student_t_two_sided_p(t, df) - expected));
    }
  }
  CHECK(worst < 1e-6);
  CHECK(student_t_two_sided_p(-2.0, 9) == doctest::Approx(student_t_two_sided_p(2.0, 9)));
  CHECK(student_t_two_sided_p(INFINITY, 9) == 0.0);
}

TEST_CASE("t critical values from the standard table") {
  CHECK(std::fabs(student_t_critical(0.05, 9) - 2.262) < 1e-3);
  CHECK(std::fabs(student_t_critical(0.01, 9) - 3.250) < 1e-3);
  CHECK(std::fabs(student_t_critical(0.05, 1) - 12.706) < 1e-3);
  CHECK(std::fabs(student_t_critical(0.05, 1000) - 1.962) < 1e-3);
  CHECK(std::fabs(student_t_critical(0.001, 9) - 4.781) < 1e-3);
}
