#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hapaxprior/corpus.hpp"
#include "hapaxprior/estimators.hpp"
#include "hapaxprior/spectrum.hpp"
#include "hapaxprior/stats.hpp"

namespace hapaxprior {

/// Token-level partition into k folds. assignments[i] is the run number
/// (1..k) of corpus token i.
struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignments;

  std::vector<std::size_t> fold_sizes() const;
};

/// Shuffles token positions with `seed` and slices the shuffled order into
/// k contiguous folds; the first (n mod k) folds get one extra token.
FoldPlan make_folds(const TaggedCorpus& corpus, int k, std::uint64_t seed);

struct FoldSplit {
  std::vector<TokenRecord> training;
  std::vector<TokenRecord> held_out;
};

FoldSplit split_fold(const TaggedCorpus& corpus, const FoldPlan& plan, int run);

/// One column of the cross-validation tables.
struct FoldResult {
  int run = 0;
  std::vector<std::int64_t> train_totals;    // N
  std::vector<std::int64_t> hapax_totals;    // N1
  PriorEstimate omle;
  PriorEstimate hmle;
  std::vector<std::int64_t> unseen_observed;  // N0
  ExpectedCounts expected_o;
  ExpectedCounts expected_h;
  /// No held-out token belonged to a type unseen in training.
  bool no_unseen = false;

  std::int64_t unseen_total() const;
};

/// Trains on everything outside fold `run` and scores the held-out tokens
/// whose form never occurs in training.
FoldResult run_fold(const TaggedCorpus& corpus, const FoldPlan& plan, int run);

/// Builds a fold result from already-counted rows (N, N1, N0), as printed
/// in a published table.
FoldResult fold_from_counts(int run, std::vector<std::int64_t> train_totals,
                            std::vector<std::int64_t> hapax_totals,
                            std::vector<std::int64_t> unseen_observed);

struct RatioOrientation {
  FunctionIndex numerator = 0;
  FunctionIndex denominator = 1;
};

/// Observed N0 ratio per fold, and the matching unrounded expected ratio
/// under each estimator.
struct RatioSeries {
  std::vector<double> observed;
  std::vector<double> expected_o;
  std::vector<double> expected_h;
};

/// Throws DataError naming the run when any ratio has a zero denominator.
RatioSeries ratio_series(const std::vector<FoldResult>& folds, RatioOrientation orientation);

struct CrossValReport {
  std::string spec_name;
  std::vector<std::string> functions;
  int k = 0;
  std::uint64_t seed = 0;
  RatioOrientation orientation;
  std::vector<FoldResult> folds;
  TTestResult ttest_o;
  TTestResult ttest_h;
};

/// Runs every fold (concurrently when `parallel`), then the two paired
/// t-tests: observed ratios against overall-MLE ratios and against
/// hapax-MLE ratios. Fold errors are rethrown with the run number attached.
CrossValReport run_crossval(const TaggedCorpus& corpus, int k, std::uint64_t seed,
                            RatioOrientation orientation, bool parallel = true);

/// Completes a report from precomputed folds (the t-tests only).
CrossValReport assemble_report(std::string spec_name, std::vector<std::string> functions, int k,
                               std::uint64_t seed, RatioOrientation orientation,
                               std::vector<FoldResult> folds);

}  // namespace hapaxprior
