#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hapaxprior/error.hpp"
#include "hapaxprior/spectrum.hpp"

namespace hapaxprior {

enum class EstimateSource { overall, hapax, form, backoff_form, backoff_hapax };

std::string_view to_string(EstimateSource source);

struct PriorEstimate {
  std::vector<double> probabilities;
  EstimateSource source = EstimateSource::overall;
  /// Tokens the estimate was computed from.
  std::int64_t support = 0;
};

/// The requested form does not occur in the table. Callers use this to
/// fall back to the hapax estimate.
class UnseenFormError : public DataError {
 public:
  explicit UnseenFormError(std::string_view form);
};

/// The table has no tokens of the kind an estimator needs (no tokens at
/// all, or no hapax legomena).
class UndefinedEstimateError : public DataError {
 public:
  using DataError::DataError;
};

/// Relative function frequencies over every token in the table.
PriorEstimate overall_mle(const SpectrumTable& table);

/// Relative function frequencies over the hapax legomena only.
PriorEstimate hapax_mle(const SpectrumTable& table);

PriorEstimate form_mle(const SpectrumTable& table, std::string_view form);

/// A form seen at least `threshold` times gets its own MLE; anything rarer
/// (including unseen forms) gets the hapax-based MLE.
PriorEstimate backoff_prior(const SpectrumTable& table, std::string_view form,
                            std::int64_t threshold);

struct ExpectedCounts {
  std::vector<double> real;
  /// Nearest integer, halves rounded up.
  std::vector<std::int64_t> rounded;
};

ExpectedCounts expected_unseen_counts(const PriorEstimate& estimate, std::int64_t n_unseen_tokens);

/// Builds an estimate from raw per-function counts; shared by the
/// estimators above and by callers that only have printed totals.
PriorEstimate estimate_from_counts(const std::vector<std::int64_t>& counts, EstimateSource source);

}  // namespace hapaxprior
