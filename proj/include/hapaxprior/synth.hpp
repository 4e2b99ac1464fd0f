#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hapaxprior/corpus.hpp"
#include "hapaxprior/spectrum.hpp"

namespace hapaxprior {

/// How tokens are spread over the Zipf profile.
///  - sampled: target_tokens independent draws from the profile, so rare
///    types may get one token or none, as in a real corpus sample.
///  - exact: deterministic largest-remainder allocation, every type >= 1.
enum class Allocation { sampled, exact };

/// Parameters of a synthetic two-function corpus whose function mix drifts
/// with type frequency: the reference-function probability is p_high for
/// the most frequent type and p_low for the rarest, linear in log rank.
struct SynthSpec {
  std::int64_t n_types = 2000;
  double zipf_exponent = 1.1;
  std::int64_t target_tokens = 50000;
  double p_high = 0.3;
  double p_low = 0.9;
  std::uint64_t seed = 0;
  /// functions[0] is the reference function.
  std::vector<std::string> functions{"ref", "other"};
  std::string suffix;
  Allocation allocation = Allocation::sampled;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

struct SynthType {
  std::string form;
  /// Tokens in the generated corpus; zero for a sampled type never drawn.
  std::int64_t tokens = 0;
  double p_reference = 0.0;
};

struct SynthTruth {
  /// Indexed by rank - 1.
  std::vector<SynthType> types;
  std::map<std::string, std::size_t, std::less<>> rank_index;

  /// Throws std::out_of_range for a form the generator did not produce.
  double p_reference(std::string_view form) const;
};

/// The class spec synthetic corpora are tagged under: tags are the function
/// labels themselves.
ClassSpec synth_class_spec(const SynthSpec& spec);

/// Token allocation over ranks 1..n_types: one token each, with the rest
/// spread proportional to rank^-exponent by largest remainder.
std::vector<std::int64_t> zipf_allocation(std::int64_t n_types, double exponent,
                                          std::int64_t target_tokens);

/// Target-token draws from the Zipf profile, counted per rank.
std::vector<std::int64_t> zipf_sample(std::int64_t n_types, double exponent,
                                      std::int64_t target_tokens, std::mt19937_64& rng);

std::pair<TaggedCorpus, SynthTruth> generate(const SynthSpec& spec);

std::string_view to_string(Allocation allocation);
Allocation parse_allocation(std::string_view name);

/// Token-weighted true reference probability over the held-out tokens
/// whose type is absent from `training`. Returns NaN when there are none.
double true_unseen_prior(const SynthTruth& truth, const SpectrumTable& training,
                         std::span<const TokenRecord> held_out);

}  // namespace hapaxprior
