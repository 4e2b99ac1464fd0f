#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hapaxprior/error.hpp"

namespace hapaxprior {

using FunctionIndex = std::size_t;

/// Definition of an ambiguity class: which surface forms belong to it and
/// how corpus tags map onto the competing functions.
///
/// The class-spec file is line oriented:
///
///     name=dutch-en
///     suffix=en
///     functions=inf,pl
///     map INF inf
///     map PL pl
///
/// Blank lines and lines starting with '#' are ignored.
class ClassSpec {
 public:
  /// Validates the invariants: at least two distinct functions, every
  /// mapped label is a known function, every function has a tag.
  ClassSpec(std::string name, std::string suffix, std::vector<std::string> functions,
            std::map<std::string, std::string> tag_map);

  static ClassSpec parse(std::istream& in);
  static ClassSpec load(const std::filesystem::path& path);

  const std::string& name() const { return name_; }
  const std::string& suffix() const { return suffix_; }
  const std::vector<std::string>& functions() const { return functions_; }
  const std::map<std::string, std::string>& tag_map() const { return tag_map_; }
  std::size_t size() const { return functions_.size(); }

  /// Throws std::invalid_argument for an unknown label.
  FunctionIndex function_index(std::string_view label) const;
  std::optional<FunctionIndex> function_for_tag(std::string_view tag) const;

  /// Serializes in the format accepted by parse().
  std::string to_string() const;

 private:
  std::string name_;
  std::string suffix_;
  std::vector<std::string> functions_;
  std::map<std::string, std::string> tag_map_;
  std::map<std::string, FunctionIndex, std::less<>> tag_index_;
};

struct TokenRecord {
  std::string form;
  FunctionIndex function = 0;

  friend auto operator<=>(const TokenRecord&, const TokenRecord&) = default;
};

struct TaggedCorpus {
  ClassSpec spec;
  std::vector<TokenRecord> tokens;
  std::size_t dropped = 0;
};

struct LoadOptions {
  /// ASCII-lowercase forms (and the suffix) before matching.
  bool fold_case = false;
};

/// Reads "form<TAB>tag" lines. Lines whose form lacks the class suffix or
/// whose tag is unmapped are counted in `dropped`. A line without exactly
/// one tab throws DataError naming the line number.
TaggedCorpus read_corpus(std::istream& in, const ClassSpec& spec, LoadOptions options = {});
TaggedCorpus load_corpus(const std::filesystem::path& path, const ClassSpec& spec,
                         LoadOptions options = {});

/// Writes a corpus back out in the format read_corpus accepts, using the
/// function labels as tags.
void write_corpus(std::ostream& out, const TaggedCorpus& corpus);

/// Deterministic Fisher-Yates permutation of [0, n).
std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed);

TaggedCorpus shuffle_tokens(const TaggedCorpus& corpus, std::uint64_t seed);

}  // namespace hapaxprior
