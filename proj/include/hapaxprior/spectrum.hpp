#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hapaxprior/corpus.hpp"

namespace hapaxprior {

struct TypeCount {
  std::string form;
  std::vector<std::int64_t> per_function;
  std::int64_t total = 0;

  bool is_hapax() const { return total == 1; }
};

/// Per-type token counts for one ambiguity class plus the two totals rows
/// the estimators need: tokens per function over all types, and tokens per
/// function over hapax types only.
class SpectrumTable {
 public:
  explicit SpectrumTable(ClassSpec spec);

  void add(const TokenRecord& token);

  const ClassSpec& spec() const { return spec_; }
  const std::map<std::string, TypeCount, std::less<>>& types() const { return types_; }
  const std::vector<std::int64_t>& token_totals() const { return token_totals_; }
  const std::vector<std::int64_t>& hapax_totals() const { return hapax_totals_; }

  const TypeCount* find(std::string_view form) const;
  bool contains(std::string_view form) const { return find(form) != nullptr; }

  std::int64_t token_count() const;
  std::int64_t hapax_count() const;
  std::size_t type_count() const { return types_.size(); }

 private:
  ClassSpec spec_;
  std::map<std::string, TypeCount, std::less<>> types_;
  std::vector<std::int64_t> token_totals_;
  std::vector<std::int64_t> hapax_totals_;
};

SpectrumTable build_spectrum(const TaggedCorpus& corpus);
SpectrumTable build_spectrum(const ClassSpec& spec, std::span<const TokenRecord> tokens);

/// Types with total == 1, in form order.
std::vector<TypeCount> hapaxes(const SpectrumTable& table);

struct ClassProportionPoint {
  std::int64_t frequency = 0;
  std::int64_t n_types = 0;
  double proportion = 0.0;
  double log_frequency = 0.0;
};

/// One point per distinct type frequency f, ascending. The proportion is
/// token weighted: reference tokens of the class over f * n_types.
std::vector<ClassProportionPoint> class_proportions(const SpectrumTable& table,
                                                    FunctionIndex reference);

/// Centered running median. The first and last (window - 1) / 2 values are
/// copied through unchanged. Throws std::invalid_argument unless window is
/// odd and at least 3.
std::vector<double> running_median(std::span<const double> values, int window);

}  // namespace hapaxprior
