#include "hapaxprior/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "random.hpp"

namespace hapaxprior {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

ClassSpec::ClassSpec(std::string name, std::string suffix, std::vector<std::string> functions,
                     std::map<std::string, std::string> tag_map)
    : name_(std::move(name)),
      suffix_(std::move(suffix)),
      functions_(std::move(functions)),
      tag_map_(std::move(tag_map)) {
  if (functions_.size() < 2) {
    throw std::invalid_argument("class spec '" + name_ + "' needs at least two functions");
  }
  std::set<std::string> seen;
  for (const auto& f : functions_) {
    if (f.empty()) throw std::invalid_argument("empty function label");
    if (!seen.insert(f).second) throw std::invalid_argument("duplicate function label '" + f + "'");
  }
  std::vector<bool> covered(functions_.size(), false);
  for (const auto& [tag, label] : tag_map_) {
    const FunctionIndex index = function_index(label);
    tag_index_.emplace(tag, index);
    covered[index] = true;
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) {
      throw std::invalid_argument("function '" + functions_[i] + "' has no corpus tag mapped to it");
    }
  }
}

ClassSpec ClassSpec::parse(std::istream& in) {
  std::optional<std::string> name, suffix;
  std::vector<std::string> functions;
  bool have_functions = false;
  std::map<std::string, std::string> tag_map;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = " (class spec line " + std::to_string(line_no) + ")";

    if (line.starts_with("map ") || line.starts_with("map\t")) {
      std::istringstream fields{std::string(line.substr(4))};
      std::string tag, label, extra;
      if (!(fields >> tag >> label) || (fields >> extra)) {
        throw DataError("expected 'map <TAG> <label>'" + where);
      }
      if (!tag_map.emplace(tag, label).second) {
        throw DataError("tag '" + tag + "' mapped twice" + where);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw DataError("unrecognized line" + where);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "name") {
      name = std::string(value);
    } else if (key == "suffix") {
      suffix = std::string(value);
    } else if (key == "functions") {
      functions = split(value, ',');
      have_functions = true;
    } else {
      throw DataError("unknown key '" + std::string(key) + "'" + where);
    }
  }
  if (!name) throw DataError("class spec is missing 'name='");
  if (!suffix) throw DataError("class spec is missing 'suffix='");
  if (!have_functions) throw DataError("class spec is missing 'functions='");
  try {
    return ClassSpec(*name, *suffix, std::move(functions), std::move(tag_map));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

ClassSpec ClassSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read class spec " + path.string());
  return parse(in);
}

FunctionIndex ClassSpec::function_index(std::string_view label) const {
  const auto it = std::find(functions_.begin(), functions_.end(), label);
  if (it == functions_.end()) {
    throw std::invalid_argument("unknown function label '" + std::string(label) + "' in class '" +
                                name_ + "'");
  }
  return static_cast<FunctionIndex>(it - functions_.begin());
}

std::optional<FunctionIndex> ClassSpec::function_for_tag(std::string_view tag) const {
  const auto it = tag_index_.find(tag);
  if (it == tag_index_.end()) return std::nullopt;
  return it->second;
}

std::string ClassSpec::to_string() const {
  std::ostringstream out;
  out << "name=" << name_ << "\nsuffix=" << suffix_ << "\nfunctions=";
  for (std::size_t i = 0; i < functions_.size(); ++i) out << (i ? "," : "") << functions_[i];
  out << '\n';
  for (const auto& [tag, label] : tag_map_) out << "map " << tag << ' ' << label << '\n';
  return out.str();
}

TaggedCorpus read_corpus(std::istream& in, const ClassSpec& spec, LoadOptions options) {
  TaggedCorpus corpus{spec, {}, 0};
  const std::string suffix = options.fold_case ? ascii_lower(spec.suffix()) : spec.suffix();

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;

    const auto tab = raw.find('\t');
    if (tab == std::string::npos || raw.find('\t', tab + 1) != std::string::npos) {
      throw DataError("corpus line " + std::to_string(line_no) +
                      ": expected exactly two tab-separated fields");
    }
    const std::string_view form_field = trim(std::string_view(raw).substr(0, tab));
    const std::string_view tag = trim(std::string_view(raw).substr(tab + 1));
    if (form_field.empty() || tag.empty()) {
      throw DataError("corpus line " + std::to_string(line_no) + ": empty form or tag");
    }
    std::string form = options.fold_case ? ascii_lower(form_field) : std::string(form_field);

    const auto function = spec.function_for_tag(tag);
    if (!function || !form.ends_with(suffix)) {
      ++corpus.dropped;
      continue;
    }
    corpus.tokens.push_back({std::move(form), *function});
  }
  if (in.bad()) throw DataError("read error in corpus");
  return corpus;
}

TaggedCorpus load_corpus(const std::filesystem::path& path, const ClassSpec& spec,
                         LoadOptions options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read corpus " + path.string());
  return read_corpus(in, spec, options);
}

void write_corpus(std::ostream& out, const TaggedCorpus& corpus) {
  for (const auto& token : corpus.tokens) {
    out << token.form << '\t' << corpus.spec.functions()[token.function] << '\n';
  }
}

std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(detail::bounded(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

TaggedCorpus shuffle_tokens(const TaggedCorpus& corpus, std::uint64_t seed) {
  TaggedCorpus out{corpus.spec, {}, corpus.dropped};
  out.tokens.reserve(corpus.tokens.size());
  for (const auto i : shuffled_order(corpus.tokens.size(), seed)) {
    out.tokens.push_back(corpus.tokens[i]);
  }
  return out;
}

}  // namespace hapaxprior
