#include "hapaxprior/estimators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hapaxprior {

std::string_view to_string(EstimateSource source) {
  switch (source) {
    case EstimateSource::overall: return "overall";
    case EstimateSource::hapax: return "hapax";
    case EstimateSource::form: return "form";
    case EstimateSource::backoff_form: return "backoff-form";
    case EstimateSource::backoff_hapax: return "backoff-hapax";
  }
  return "unknown";
}

UnseenFormError::UnseenFormError(std::string_view form)
    : DataError("unseen form '" + std::string(form) + "'") {}

PriorEstimate estimate_from_counts(const std::vector<std::int64_t>& counts,
                                   EstimateSource source) {
  const std::int64_t support = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  if (support <= 0) {
    throw UndefinedEstimateError(std::string(to_string(source)) +
                                 " estimate is undefined: no tokens to estimate from");
  }
  PriorEstimate estimate{{}, source, support};
  estimate.probabilities.reserve(counts.size());
  for (const auto c : counts) {
    if (c < 0) throw std::invalid_argument("negative count");
    estimate.probabilities.push_back(static_cast<double>(c) / static_cast<double>(support));
  }
  return estimate;
}

PriorEstimate overall_mle(const SpectrumTable& table) {
  return estimate_from_counts(table.token_totals(), EstimateSource::overall);
}

PriorEstimate hapax_mle(const SpectrumTable& table) {
  if (table.hapax_count() == 0) {
    throw UndefinedEstimateError("hapax estimate is undefined: the table has no hapax legomena");
  }
  return estimate_from_counts(table.hapax_totals(), EstimateSource::hapax);
}

PriorEstimate form_mle(const SpectrumTable& table, std::string_view form) {
  const TypeCount* type = table.find(form);
  if (type == nullptr) throw UnseenFormError(form);
  return estimate_from_counts(type->per_function, EstimateSource::form);
}

PriorEstimate backoff_prior(const SpectrumTable& table, std::string_view form,
                            std::int64_t threshold) {
  if (threshold < 1) throw std::invalid_argument("backoff threshold must be >= 1");
  const TypeCount* type = table.find(form);
  if (type != nullptr && type->total >= threshold) {
    return estimate_from_counts(type->per_function, EstimateSource::backoff_form);
  }
  auto estimate = hapax_mle(table);
  estimate.source = EstimateSource::backoff_hapax;
  return estimate;
}

ExpectedCounts expected_unseen_counts(const PriorEstimate& estimate,
                                      std::int64_t n_unseen_tokens) {
  if (n_unseen_tokens < 0) throw std::invalid_argument("negative unseen token count");
  ExpectedCounts counts;
  const auto n = static_cast<double>(n_unseen_tokens);
  for (const double p : estimate.probabilities) {
    const double real = p * n;
    counts.real.push_back(real);
    counts.rounded.push_back(static_cast<std::int64_t>(std::floor(real + 0.5)));
  }
  return counts;
}

}  // namespace hapaxprior
