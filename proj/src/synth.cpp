#include "hapaxprior/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "random.hpp"

namespace hapaxprior {

void SynthSpec::validate() const {
  if (n_types < 2) throw std::invalid_argument("synth: n_types must be >= 2");
  if (!(zipf_exponent > 0.0) || !std::isfinite(zipf_exponent)) {
    throw std::invalid_argument("synth: zipf exponent must be > 0");
  }
  if (target_tokens < n_types) {
    throw std::invalid_argument("synth: target_tokens (" + std::to_string(target_tokens) +
                                ") is smaller than n_types (" + std::to_string(n_types) + ")");
  }
  if (!(p_high >= 0.0 && p_high <= 1.0) || !(p_low >= 0.0 && p_low <= 1.0)) {
    throw std::invalid_argument("synth: p_high and p_low must lie in [0, 1]");
  }
  if (functions.size() != 2 || functions[0] == functions[1] || functions[0].empty() ||
      functions[1].empty()) {
    throw std::invalid_argument("synth: exactly two distinct function labels are required");
  }
}

double SynthTruth::p_reference(std::string_view form) const {
  const auto it = rank_index.find(form);
  if (it == rank_index.end()) {
    throw std::out_of_range("synth truth has no form '" + std::string(form) + "'");
  }
  return types[it->second].p_reference;
}

ClassSpec synth_class_spec(const SynthSpec& spec) {
  return ClassSpec("synth", spec.suffix, spec.functions,
                   {{spec.functions[0], spec.functions[0]}, {spec.functions[1], spec.functions[1]}});
}

std::vector<std::int64_t> zipf_allocation(std::int64_t n_types, double exponent,
                                          std::int64_t target_tokens) {
  if (n_types < 1 || target_tokens < n_types) {
    throw std::invalid_argument("zipf allocation needs 1 <= n_types <= target_tokens");
  }
  const auto n = static_cast<std::size_t>(n_types);
  std::vector<double> weights(n);
  for (std::size_t r = 0; r < n; ++r) weights[r] = std::pow(static_cast<double>(r + 1), -exponent);
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);

  const std::int64_t spare = target_tokens - n_types;
  std::vector<std::int64_t> counts(n, 1);
  std::vector<double> remainders(n);
  std::int64_t assigned = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const double quota = static_cast<double>(spare) * weights[r] / weight_sum;
    const double whole = std::floor(quota);
    counts[r] += static_cast<std::int64_t>(whole);
    remainders[r] = quota - whole;
    assigned += static_cast<std::int64_t>(whole);
  }

  // Largest remainder; ties go to the more frequent rank.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::int64_t i = 0; i < spare - assigned; ++i) {
    ++counts[order[static_cast<std::size_t>(i) % n]];
  }
  return counts;
}

std::vector<std::int64_t> zipf_sample(std::int64_t n_types, double exponent,
                                      std::int64_t target_tokens, std::mt19937_64& rng) {
  if (n_types < 1 || target_tokens < 0) {
    throw std::invalid_argument("zipf sample needs n_types >= 1 and target_tokens >= 0");
  }
  const auto n = static_cast<std::size_t>(n_types);
  std::vector<double> cumulative(n);
  double running = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    running += std::pow(static_cast<double>(r + 1), -exponent);
    cumulative[r] = running;
  }
  std::vector<std::int64_t> counts(n, 0);
  for (std::int64_t i = 0; i < target_tokens; ++i) {
    const double u = detail::unit_interval(rng) * running;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    ++counts[std::min(static_cast<std::size_t>(it - cumulative.begin()), n - 1)];
  }
  return counts;
}

std::string_view to_string(Allocation allocation) {
  return allocation == Allocation::exact ? "exact" : "sampled";
}

Allocation parse_allocation(std::string_view name) {
  if (name == "sampled") return Allocation::sampled;
  if (name == "exact") return Allocation::exact;
  throw std::invalid_argument("allocation must be 'sampled' or 'exact', got '" +
                              std::string(name) + "'");
}

std::pair<TaggedCorpus, SynthTruth> generate(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const auto counts =
      spec.allocation == Allocation::exact
          ? zipf_allocation(spec.n_types, spec.zipf_exponent, spec.target_tokens)
          : zipf_sample(spec.n_types, spec.zipf_exponent, spec.target_tokens, rng);
  const int width = static_cast<int>(std::to_string(spec.n_types).size());
  const double log_last = std::log(static_cast<double>(spec.n_types));

  SynthTruth truth;
  truth.types.reserve(counts.size());
  for (std::size_t r = 0; r < counts.size(); ++r) {
    const std::string rank = std::to_string(r + 1);
    std::string form = "w" + std::string(static_cast<std::size_t>(width) - rank.size(), '0') +
                       rank + spec.suffix;
    const double position = std::log(static_cast<double>(r + 1)) / log_last;
    const double p = spec.p_high * (1.0 - position) + spec.p_low * position;
    truth.rank_index.emplace(form, r);
    truth.types.push_back({std::move(form), counts[r], p});
  }

  // Lay the tokens out rank by rank, then shuffle into corpus order.
  std::vector<std::size_t> ranks;
  ranks.reserve(static_cast<std::size_t>(spec.target_tokens));
  for (std::size_t r = 0; r < counts.size(); ++r) ranks.insert(ranks.end(), static_cast<std::size_t>(counts[r]), r);
  for (std::size_t i = ranks.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(detail::bounded(rng, i));
    std::swap(ranks[i - 1], ranks[j]);
  }

  TaggedCorpus corpus{synth_class_spec(spec), {}, 0};
  corpus.tokens.reserve(ranks.size());
  for (const auto r : ranks) {
    const FunctionIndex function = detail::unit_interval(rng) < truth.types[r].p_reference ? 0 : 1;
    corpus.tokens.push_back({truth.types[r].form, function});
  }
  return {std::move(corpus), std::move(truth)};
}

double true_unseen_prior(const SynthTruth& truth, const SpectrumTable& training,
                         std::span<const TokenRecord> held_out) {
  double weighted = 0.0;
  std::int64_t tokens = 0;
  for (const auto& token : held_out) {
    if (training.contains(token.form)) continue;
    weighted += truth.p_reference(token.form);
    ++tokens;
  }
  if (tokens == 0) return std::numeric_limits<double>::quiet_NaN();
  return weighted / static_cast<double>(tokens);
}

}  // namespace hapaxprior
