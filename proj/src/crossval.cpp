#include "hapaxprior/crossval.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace hapaxprior {

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (const int run : assignments) ++sizes[static_cast<std::size_t>(run - 1)];
  return sizes;
}

FoldPlan make_folds(const TaggedCorpus& corpus, int k, std::uint64_t seed) {
  const std::size_t n = corpus.tokens.size();
  if (k < 2) throw std::invalid_argument("fold count k must be >= 2");
  if (static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("fold count k = " + std::to_string(k) + " exceeds token count " +
                                std::to_string(n));
  }
  FoldPlan plan{k, seed, std::vector<int>(n, 0)};
  const auto order = shuffled_order(n, seed);
  const std::size_t base = n / static_cast<std::size_t>(k);
  const std::size_t extra = n % static_cast<std::size_t>(k);

  std::size_t cursor = 0;
  for (int run = 1; run <= k; ++run) {
    const std::size_t size = base + (static_cast<std::size_t>(run - 1) < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) plan.assignments[order[cursor++]] = run;
  }
  return plan;
}

FoldSplit split_fold(const TaggedCorpus& corpus, const FoldPlan& plan, int run) {
  if (plan.assignments.size() != corpus.tokens.size()) {
    throw std::invalid_argument("fold plan does not match corpus size");
  }
  if (run < 1 || run > plan.k) {
    throw std::invalid_argument("fold " + std::to_string(run) + " outside [1, " +
                                std::to_string(plan.k) + "]");
  }
  FoldSplit split;
  for (std::size_t i = 0; i < corpus.tokens.size(); ++i) {
    (plan.assignments[i] == run ? split.held_out : split.training).push_back(corpus.tokens[i]);
  }
  return split;
}

std::int64_t FoldResult::unseen_total() const {
  return std::accumulate(unseen_observed.begin(), unseen_observed.end(), std::int64_t{0});
}

FoldResult fold_from_counts(int run, std::vector<std::int64_t> train_totals,
                            std::vector<std::int64_t> hapax_totals,
                            std::vector<std::int64_t> unseen_observed) {
  if (train_totals.size() != hapax_totals.size() ||
      train_totals.size() != unseen_observed.size()) {
    throw std::invalid_argument("fold count rows differ in length");
  }
  FoldResult result;
  result.run = run;
  result.omle = estimate_from_counts(train_totals, EstimateSource::overall);
  if (std::accumulate(hapax_totals.begin(), hapax_totals.end(), std::int64_t{0}) == 0) {
    throw UndefinedEstimateError("hapax estimate is undefined: no hapax legomena in training");
  }
  result.hmle = estimate_from_counts(hapax_totals, EstimateSource::hapax);
  result.train_totals = std::move(train_totals);
  result.hapax_totals = std::move(hapax_totals);
  result.unseen_observed = std::move(unseen_observed);

  const std::int64_t unseen = result.unseen_total();
  result.no_unseen = unseen == 0;
  result.expected_o = expected_unseen_counts(result.omle, unseen);
  result.expected_h = expected_unseen_counts(result.hmle, unseen);
  return result;
}

FoldResult run_fold(const TaggedCorpus& corpus, const FoldPlan& plan, int run) {
  const FoldSplit split = split_fold(corpus, plan, run);
  const SpectrumTable training = build_spectrum(corpus.spec, split.training);

  std::vector<std::int64_t> unseen(corpus.spec.size(), 0);
  for (const auto& token : split.held_out) {
    if (!training.contains(token.form)) ++unseen[token.function];
  }
  return fold_from_counts(run, training.token_totals(), training.hapax_totals(),
                          std::move(unseen));
}

RatioSeries ratio_series(const std::vector<FoldResult>& folds, RatioOrientation orientation) {
  RatioSeries series;
  const auto a = orientation.numerator;
  const auto b = orientation.denominator;
  for (const auto& fold : folds) {
    if (fold.unseen_observed[b] == 0 || fold.expected_o.real[b] == 0.0 ||
        fold.expected_h.real[b] == 0.0) {
      throw DataError("fold " + std::to_string(fold.run) +
                      ": ratio denominator is zero, t-test is undefined");
    }
    series.observed.push_back(static_cast<double>(fold.unseen_observed[a]) /
                              static_cast<double>(fold.unseen_observed[b]));
    series.expected_o.push_back(fold.expected_o.real[a] / fold.expected_o.real[b]);
    series.expected_h.push_back(fold.expected_h.real[a] / fold.expected_h.real[b]);
  }
  return series;
}

CrossValReport assemble_report(std::string spec_name, std::vector<std::string> functions, int k,
                               std::uint64_t seed, RatioOrientation orientation,
                               std::vector<FoldResult> folds) {
  CrossValReport report;
  report.spec_name = std::move(spec_name);
  report.functions = std::move(functions);
  report.k = k;
  report.seed = seed;
  report.orientation = orientation;
  report.folds = std::move(folds);

  const RatioSeries series = ratio_series(report.folds, orientation);
  report.ttest_o = paired_t(series.observed, series.expected_o);
  report.ttest_h = paired_t(series.observed, series.expected_h);
  return report;
}

CrossValReport run_crossval(const TaggedCorpus& corpus, int k, std::uint64_t seed,
                            RatioOrientation orientation, bool parallel) {
  const std::size_t n_functions = corpus.spec.size();
  if (orientation.numerator >= n_functions || orientation.denominator >= n_functions ||
      orientation.numerator == orientation.denominator) {
    throw std::invalid_argument("ratio orientation needs two distinct functions of the class");
  }
  const FoldPlan plan = make_folds(corpus, k, seed);

  auto fold_task = [&corpus, &plan](int run) {
    try {
      return run_fold(corpus, plan, run);
    } catch (const DataError& e) {
      throw DataError("fold " + std::to_string(run) + ": " + e.what());
    }
  };

  std::vector<FoldResult> folds;
  folds.reserve(static_cast<std::size_t>(k));
  if (parallel) {
    const int batch = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    for (int first = 1; first <= k; first += batch) {
      std::vector<std::future<FoldResult>> pending;
      for (int run = first; run < first + batch && run <= k; ++run) {
        pending.push_back(std::async(std::launch::async, fold_task, run));
      }
      for (auto& f : pending) folds.push_back(f.get());
    }
  } else {
    for (int run = 1; run <= k; ++run) folds.push_back(fold_task(run));
  }

  return assemble_report(corpus.spec.name(), corpus.spec.functions(), k, seed, orientation,
                         std::move(folds));
}

}  // namespace hapaxprior
