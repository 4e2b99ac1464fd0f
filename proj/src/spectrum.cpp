#include "hapaxprior/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hapaxprior {

SpectrumTable::SpectrumTable(ClassSpec spec)
    : spec_(std::move(spec)),
      token_totals_(spec_.size(), 0),
      hapax_totals_(spec_.size(), 0) {}

void SpectrumTable::add(const TokenRecord& token) {
  if (token.function >= spec_.size()) {
    throw std::invalid_argument("token function index out of range for class '" + spec_.name() +
                                "'");
  }
  auto it = types_.find(token.form);
  if (it == types_.end()) {
    TypeCount fresh{token.form, std::vector<std::int64_t>(spec_.size(), 0), 0};
    it = types_.emplace(token.form, std::move(fresh)).first;
  }
  TypeCount& type = it->second;

  // Keep the hapax row in step: a type enters it at its first token and
  // leaves at its second.
  if (type.total == 1) {
    const auto single = std::find(type.per_function.begin(), type.per_function.end(), 1);
    --hapax_totals_[static_cast<std::size_t>(single - type.per_function.begin())];
  }
  ++type.per_function[token.function];
  ++type.total;
  ++token_totals_[token.function];
  if (type.total == 1) ++hapax_totals_[token.function];
}

const TypeCount* SpectrumTable::find(std::string_view form) const {
  const auto it = types_.find(form);
  return it == types_.end() ? nullptr : &it->second;
}

std::int64_t SpectrumTable::token_count() const {
  return std::accumulate(token_totals_.begin(), token_totals_.end(), std::int64_t{0});
}

std::int64_t SpectrumTable::hapax_count() const {
  return std::accumulate(hapax_totals_.begin(), hapax_totals_.end(), std::int64_t{0});
}

SpectrumTable build_spectrum(const ClassSpec& spec, std::span<const TokenRecord> tokens) {
  SpectrumTable table(spec);
  for (const auto& token : tokens) table.add(token);
  return table;
}

SpectrumTable build_spectrum(const TaggedCorpus& corpus) {
  return build_spectrum(corpus.spec, corpus.tokens);
}

std::vector<TypeCount> hapaxes(const SpectrumTable& table) {
  std::vector<TypeCount> out;
  for (const auto& [form, type] : table.types()) {
    if (type.is_hapax()) out.push_back(type);
  }
  return out;
}

std::vector<ClassProportionPoint> class_proportions(const SpectrumTable& table,
                                                    FunctionIndex reference) {
  if (reference >= table.spec().size()) {
    throw std::invalid_argument("reference function index out of range");
  }
  struct Accumulator {
    std::int64_t n_types = 0;
    std::int64_t reference_tokens = 0;
  };
  std::map<std::int64_t, Accumulator> classes;
  for (const auto& [form, type] : table.types()) {
    auto& acc = classes[type.total];
    ++acc.n_types;
    acc.reference_tokens += type.per_function[reference];
  }

  std::vector<ClassProportionPoint> points;
  points.reserve(classes.size());
  for (const auto& [f, acc] : classes) {
    const double tokens = static_cast<double>(f) * static_cast<double>(acc.n_types);
    points.push_back({f, acc.n_types, static_cast<double>(acc.reference_tokens) / tokens,
                      std::log(static_cast<double>(f))});
  }
  return points;
}

std::vector<double> running_median(std::span<const double> values, int window) {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("running median window must be odd and >= 3, got " +
                                std::to_string(window));
  }
  std::vector<double> out(values.begin(), values.end());
  const auto half = static_cast<std::size_t>(window / 2);
  if (values.size() < static_cast<std::size_t>(window)) return out;

  std::vector<double> scratch(static_cast<std::size_t>(window));
  for (std::size_t i = half; i + half < values.size(); ++i) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(i - half), window, scratch.begin());
    auto mid = scratch.begin() + static_cast<std::ptrdiff_t>(half);
    std::nth_element(scratch.begin(), mid, scratch.end());
    out[i] = *mid;
  }
  return out;
}

}  // namespace hapaxprior
