#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hapaxprior/crossval.hpp"
#include "hapaxprior/estimators.hpp"
#include "hapaxprior/spectrum.hpp"

namespace hapaxprior::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

struct RunConfig {
  std::string subcommand;
  std::filesystem::path corpus;
  std::filesystem::path class_spec;
  int k = 10;
  std::uint64_t seed = 0;
  std::int64_t threshold = 10;
  int smooth_window = 5;
  /// "A/B"; empty means the first two functions of the class.
  std::string ratio;
  std::optional<std::filesystem::path> out;
  bool fold_case = false;
  bool parallel = true;

  // priors
  std::vector<std::string> forms;
  std::optional<std::filesystem::path> forms_file;

  // figure; empty means the first function of the class.
  std::string reference;

  // synth
  std::int64_t n_types = 2000;
  double zipf_exponent = 1.1;
  std::int64_t tokens = 50000;
  double p_high = 0.3;
  double p_low = 0.9;
  std::string functions = "ref,other";
  std::string suffix;
  std::string allocation = "sampled";
  std::optional<std::filesystem::path> truth_out;
  std::optional<std::filesystem::path> spec_out;
};

/// Parses argv (argv[0] is the program name) and runs one subcommand. Data
/// goes to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// Renderers, shared by the subcommands and by tests.

std::string format_fixed(double value);
std::string format_p(double value);

void write_spectrum_summary(std::ostream& out, const SpectrumTable& table, std::size_t dropped);
void write_priors_csv(std::ostream& out, const SpectrumTable& table,
                      const std::vector<std::string>& forms, std::int64_t threshold);
void write_figure_csv(std::ostream& out, const SpectrumTable& table, FunctionIndex reference,
                      int window);
void write_crossval_csv(std::ostream& out, const CrossValReport& report);
void write_report_table(std::ostream& out, const CrossValReport& report);

RatioOrientation parse_ratio(const ClassSpec& spec, const std::string& ratio);

}  // namespace hapaxprior::cli
