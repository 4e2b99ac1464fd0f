#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "brute_force.hpp"
#include "hapaxprior/estimators.hpp"

using namespace hapaxprior;

namespace {

ClassSpec inf_pl() { return ClassSpec("dutch-en", "en", {"inf", "pl"}, {{"INF", "inf"}, {"PL", "pl"}}); }

void add_many(SpectrumTable& table, const std::string& form, FunctionIndex f, int count) {
  for (int i = 0; i < count; ++i) table.add({form, f});
}

/// Table whose token totals are (a, b) and whose hapax totals are (ha, hb).
SpectrumTable with_totals(int a, int b, int ha = 0, int hb = 0) {
  SpectrumTable table(inf_pl());
  for (int i = 0; i < ha; ++i) table.add({"hi" + std::to_string(i) + "en", 0});
  for (int i = 0; i < hb; ++i) table.add({"hp" + std::to_string(i) + "en", 1});
  add_many(table, "bulkinfen", 0, a - ha);
  add_many(table, "bulkplen", 1, b - hb);
  return table;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("overall MLE") {
  SUBCASE("aggregate -en totals") {
    const auto e = overall_mle(with_totals(21703, 9922));
    CHECK(e.probabilities[0] == doctest::Approx(0.686).epsilon(0.0005 / 0.686));
    CHECK(e.support == 31625);
    CHECK(e.source == EstimateSource::overall);
  }
  SUBCASE("first training fold") {
    const auto e = overall_mle(with_totals(19509, 8953));
    CHECK(std::round(e.probabilities[0] * 1000) / 1000 == 0.685);
  }
  SUBCASE("symmetric") {
    const auto e = overall_mle(with_totals(5, 5));
    CHECK(e.probabilities == std::vector<double>{0.5, 0.5});
  }
  CHECK_THROWS_AS(overall_mle(SpectrumTable(inf_pl())), UndefinedEstimateError);
}

TEST_CASE("hapax MLE") {
  {
    const auto e = hapax_mle(with_totals(19509, 8953, 1075, 185));
    CHECK(std::round(e.probabilities[0] * 1000) / 1000 == 0.853);
    CHECK(e.support == 1260);
    CHECK(e.source == EstimateSource::hapax);
  }
  {
    const auto e = estimate_from_counts({1312, 2913}, EstimateSource::hapax);
    CHECK(std::round(e.probabilities[0] * 1000) / 1000 == 0.311);
  }
  {
    const auto e = hapax_mle(with_totals(10, 10, 4, 0));
    CHECK(e.probabilities == std::vector<double>{1.0, 0.0});
  }
  CHECK_THROWS_AS(hapax_mle(with_totals(10, 10)), UndefinedEstimateError);
}

TEST_CASE("form MLE") {
  SpectrumTable table(inf_pl());
  add_many(table, "lopen", 0, 92);
  add_many(table, "lopen", 1, 43);
  table.add({"aanlokken", 0});
  add_many(table, "spelden", 0, 2);
  add_many(table, "spelden", 1, 2);

  const auto lopen = form_mle(table, "lopen");
  CHECK(std::round(lopen.probabilities[0] * 100) / 100 == 0.68);
  CHECK(lopen.support == 135);
  CHECK(form_mle(table, "aanlokken").probabilities == std::vector<double>{1.0, 0.0});
  CHECK(form_mle(table, "spelden").probabilities == std::vector<double>{0.5, 0.5});
  CHECK_THROWS_AS(form_mle(table, "bedraden"), UnseenFormError);
}

TEST_CASE("backoff prior") {
  SpectrumTable table(inf_pl());
  add_many(table, "lopen", 0, 92);
  add_many(table, "lopen", 1, 43);
  table.add({"aanlokken", 0});
  table.add({"fluiten", 1});
  table.add({"spelden", 0});

  const auto lopen = backoff_prior(table, "lopen", 10);
  CHECK(lopen.source == EstimateSource::backoff_form);
  CHECK(std::round(lopen.probabilities[0] * 100) / 100 == 0.68);

  const auto unseen = backoff_prior(table, "bedraden", 10);
  CHECK(unseen.source == EstimateSource::backoff_hapax);
  CHECK(unseen.probabilities == hapax_mle(table).probabilities);
  CHECK(unseen.support == 3);

  const auto once = backoff_prior(table, "aanlokken", 2);
  CHECK(once.source == EstimateSource::backoff_hapax);
  CHECK(once.probabilities[0] == doctest::Approx(2.0 / 3.0));

  CHECK(backoff_prior(table, "aanlokken", 1).probabilities == std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(backoff_prior(table, "lopen", 0), std::invalid_argument);

  SpectrumTable no_hapax(inf_pl());
  add_many(no_hapax, "lopen", 0, 3);
  CHECK_THROWS_AS(backoff_prior(no_hapax, "bedraden", 2), UndefinedEstimateError);
  CHECK(backoff_prior(no_hapax, "lopen", 2).source == EstimateSource::backoff_form);
}

TEST_CASE("expected unseen counts") {
  const auto hmle = estimate_from_counts({1075, 185}, EstimateSource::hapax);
  const auto omle = estimate_from_counts({19509, 8953}, EstimateSource::overall);
  const auto eh = expected_unseen_counts(hmle, 144);
  const auto eo = expected_unseen_counts(omle, 144);
  CHECK(eh.rounded == std::vector<std::int64_t>{123, 21});
  CHECK(eo.rounded == std::vector<std::int64_t>{99, 45});
  CHECK(sum(eh.real) == doctest::Approx(144.0));

  const auto zero = expected_unseen_counts(hmle, 0);
  CHECK(zero.real == std::vector<double>{0.0, 0.0});
  CHECK(zero.rounded == std::vector<std::int64_t>{0, 0});

  // Halves round up.
  const auto half = expected_unseen_counts(estimate_from_counts({1, 1}, EstimateSource::overall), 3);
  CHECK(half.rounded == std::vector<std::int64_t>{2, 2});
  CHECK_THROWS_AS(expected_unseen_counts(hmle, -1), std::invalid_argument);
}

TEST_CASE("three-way ambiguity") {
  SpectrumTable table(ClassSpec("t", "", {"a", "b", "c"}, {{"A", "a"}, {"B", "b"}, {"C", "c"}}));
  table.add({"x", 0});
  table.add({"y", 1});
  table.add({"z", 2});
  table.add({"z", 2});
  const auto o = overall_mle(table);
  CHECK(o.probabilities == std::vector<double>{0.25, 0.25, 0.5});
  const auto h = hapax_mle(table);
  CHECK(h.probabilities == std::vector<double>{0.5, 0.5, 0.0});
}

TEST_CASE("estimator invariants on random corpora") {
  std::mt19937_64 rng(7);
  const ClassSpec spec("r", "", {"a", "b", "c"}, {{"A", "a"}, {"B", "b"}, {"C", "c"}});
  for (int round = 0; round < 300; ++round) {
    const auto tokens = testing::random_tokens(rng, 50, 3);
    const auto table = build_spectrum(spec, tokens);
    if (table.token_count() == 0) continue;

    const auto o = overall_mle(table);
    CHECK(std::fabs(sum(o.probabilities) - 1.0) < 1e-12);
    CHECK(o.support == table.token_count());
    for (double p : o.probabilities) CHECK((p >= 0.0 && p <= 1.0));

    std::vector<double> weighted(3, 0.0);
    for (const auto& type : hapaxes(table)) {
      const auto f = form_mle(table, type.form);
      CHECK(std::count(f.probabilities.begin(), f.probabilities.end(), 1.0) == 1);
      for (std::size_t i = 0; i < 3; ++i) weighted[i] += f.probabilities[i];
    }
    if (table.hapax_count() > 0) {
      const auto h = hapax_mle(table);
      CHECK(std::fabs(sum(h.probabilities) - 1.0) < 1e-12);
      CHECK(h.support == table.hapax_count());
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(h.probabilities[i] ==
              doctest::Approx(weighted[i] / static_cast<double>(table.hapax_count())));
      }
    }

    for (const auto& [form, type] : table.types()) {
      const auto f = form_mle(table, form);
      const auto b = backoff_prior(table, form, 1);
      CHECK(b.probabilities == f.probabilities);
      CHECK(b.support == type.total);
      CHECK(b.source == EstimateSource::backoff_form);
    }
  }
}
