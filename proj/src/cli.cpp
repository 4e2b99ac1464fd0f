#include "hapaxprior/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hapaxprior/synth.hpp"

namespace hapaxprior::cli {
namespace {

std::string shortest(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::vector<std::string> split_labels(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string ascii_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << contents) || !file.flush()) {
    throw DataError("cannot write " + path.string());
  }
}

void add_input_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--corpus", config.corpus, "Tagged corpus, one 'form<TAB>tag' per line")
      ->required();
  sub->add_option("--class-spec", config.class_spec, "Ambiguity class definition")->required();
  sub->add_flag("--fold-case", config.fold_case, "Lowercase forms before matching");
}

void add_out_option(CLI::App* sub, RunConfig& config) {
  sub->add_option("--out", config.out, "Output path (default: standard output)");
}

void add_crossval_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--k", config.k, "Number of folds")->check(CLI::Range(2, 1 << 30));
  sub->add_option("--seed", config.seed, "Shuffle seed");
  sub->add_option("--ratio", config.ratio, "Ratio orientation A/B for the t-tests");
  sub->add_flag("!--sequential", config.parallel, "Run folds on one thread");
}

int execute(const RunConfig& config, std::ostream& data, std::ostream& err) {
  if (config.subcommand == "synth") {
    SynthSpec spec;
    spec.n_types = config.n_types;
    spec.zipf_exponent = config.zipf_exponent;
    spec.target_tokens = config.tokens;
    spec.p_high = config.p_high;
    spec.p_low = config.p_low;
    spec.seed = config.seed;
    spec.functions = split_labels(config.functions, ',');
    spec.suffix = config.suffix;
    spec.allocation = parse_allocation(config.allocation);
    spec.validate();

    const auto [corpus, truth] = generate(spec);
    data << "# synth seed=" << spec.seed << " n_types=" << spec.n_types
         << " zipf_exponent=" << shortest(spec.zipf_exponent)
         << " tokens=" << spec.target_tokens << " p_high=" << shortest(spec.p_high)
         << " p_low=" << shortest(spec.p_low) << " allocation=" << to_string(spec.allocation)
         << '\n';
    write_corpus(data, corpus);

    std::optional<std::filesystem::path> truth_path = config.truth_out;
    if (!truth_path && config.out) truth_path = config.out->string() + ".truth.csv";
    if (truth_path) {
      std::ostringstream csv;
      csv << "form,true_p_reference\n";
      for (const auto& type : truth.types) csv << type.form << ',' << shortest(type.p_reference) << '\n';
      write_file(*truth_path, csv.str());
    } else {
      err << "note: no --out or --truth given, truth sidecar not written\n";
    }
    if (config.spec_out) write_file(*config.spec_out, corpus.spec.to_string());
    return kOk;
  }

  const ClassSpec spec = ClassSpec::load(config.class_spec);

  // Everything that depends on the class spec is checked before the corpus
  // is read.
  RatioOrientation orientation;
  FunctionIndex reference = 0;
  std::vector<std::string> forms = config.forms;
  if (config.subcommand == "crossval" || config.subcommand == "report") {
    orientation = parse_ratio(spec, config.ratio);
  } else if (config.subcommand == "figure") {
    if (!config.reference.empty()) reference = spec.function_index(config.reference);
  } else if (config.subcommand == "priors") {
    if (config.forms_file) {
      std::ifstream in(*config.forms_file);
      if (!in) throw DataError("cannot read forms file " + config.forms_file->string());
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        forms.push_back(line);
      }
    }
    if (forms.empty()) throw std::invalid_argument("priors needs --form or --forms-file");
    if (config.fold_case) {
      for (auto& f : forms) f = ascii_lower(f);
    }
  }

  const TaggedCorpus corpus = load_corpus(config.corpus, spec, {config.fold_case});

  if (config.subcommand == "spectrum") {
    write_spectrum_summary(data, build_spectrum(corpus), corpus.dropped);
  } else if (config.subcommand == "priors") {
    write_priors_csv(data, build_spectrum(corpus), forms, config.threshold);
  } else if (config.subcommand == "figure") {
    write_figure_csv(data, build_spectrum(corpus), reference, config.smooth_window);
  } else if (config.subcommand == "crossval") {
    write_crossval_csv(data, run_crossval(corpus, config.k, config.seed, orientation, config.parallel));
  } else if (config.subcommand == "report") {
    write_report_table(data, run_crossval(corpus, config.k, config.seed, orientation, config.parallel));
  }
  return kOk;
}

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string format_p(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

RatioOrientation parse_ratio(const ClassSpec& spec, const std::string& ratio) {
  if (ratio.empty()) return {0, 1};
  const auto slash = ratio.find('/');
  if (slash == std::string::npos || ratio.find('/', slash + 1) != std::string::npos) {
    throw std::invalid_argument("--ratio must look like A/B, got '" + ratio + "'");
  }
  const RatioOrientation orientation{spec.function_index(ratio.substr(0, slash)),
                                     spec.function_index(ratio.substr(slash + 1))};
  if (orientation.numerator == orientation.denominator) {
    throw std::invalid_argument("--ratio needs two different functions");
  }
  return orientation;
}

void write_spectrum_summary(std::ostream& out, const SpectrumTable& table, std::size_t dropped) {
  out << "# spectrum class=" << table.spec().name() << " tokens=" << table.token_count()
      << " types=" << table.type_count() << " hapaxes=" << table.hapax_count()
      << " dropped=" << dropped << '\n';
  out << "function,tokens,hapax_tokens\n";
  const auto& functions = table.spec().functions();
  for (std::size_t f = 0; f < functions.size(); ++f) {
    out << functions[f] << ',' << table.token_totals()[f] << ',' << table.hapax_totals()[f] << '\n';
  }
}

void write_priors_csv(std::ostream& out, const SpectrumTable& table,
                      const std::vector<std::string>& forms, std::int64_t threshold) {
  out << "form,source,support";
  for (const auto& f : table.spec().functions()) out << ',' << f;
  out << '\n';
  for (const auto& form : forms) {
    const PriorEstimate estimate = backoff_prior(table, form, threshold);
    out << form << ',' << to_string(estimate.source) << ',' << estimate.support;
    for (const double p : estimate.probabilities) out << ',' << format_fixed(p);
    out << '\n';
  }
}

void write_figure_csv(std::ostream& out, const SpectrumTable& table, FunctionIndex reference,
                      int window) {
  const auto points = class_proportions(table, reference);
  std::vector<double> proportions;
  proportions.reserve(points.size());
  for (const auto& p : points) proportions.push_back(p.proportion);
  const auto smoothed = running_median(proportions, window);

  out << "frequency,log_frequency,n_types,proportion,smoothed\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << points[i].frequency << ',' << format_fixed(points[i].log_frequency) << ','
        << points[i].n_types << ',' << format_fixed(points[i].proportion) << ','
        << format_fixed(smoothed[i]) << '\n';
  }
}

namespace {

std::string ratio_label(const CrossValReport& report) {
  return report.functions[report.orientation.numerator] + "/" +
         report.functions[report.orientation.denominator];
}

}  // namespace

void write_crossval_csv(std::ostream& out, const CrossValReport& report) {
  const auto& fs = report.functions;
  out << "# crossval class=" << report.spec_name << " k=" << report.k << " seed=" << report.seed
      << " ratio=" << ratio_label(report) << '\n';
  out << "run";
  for (const char* column : {"N", "omle", "N1", "hmle", "N0", "Eo", "Eh", "Eo_real", "Eh_real"}) {
    for (const auto& f : fs) out << ',' << column << '_' << f;
  }
  out << ",no_unseen\n";

  for (const auto& fold : report.folds) {
    out << fold.run;
    for (const auto v : fold.train_totals) out << ',' << v;
    for (const auto p : fold.omle.probabilities) out << ',' << format_fixed(p);
    for (const auto v : fold.hapax_totals) out << ',' << v;
    for (const auto p : fold.hmle.probabilities) out << ',' << format_fixed(p);
    for (const auto v : fold.unseen_observed) out << ',' << v;
    for (const auto v : fold.expected_o.rounded) out << ',' << v;
    for (const auto v : fold.expected_h.rounded) out << ',' << v;
    for (const auto v : fold.expected_o.real) out << ',' << format_fixed(v);
    for (const auto v : fold.expected_h.real) out << ',' << format_fixed(v);
    out << ',' << (fold.no_unseen ? 1 : 0) << '\n';
  }
  out << "ttest,overall," << format_fixed(report.ttest_o.t) << ',' << report.ttest_o.df << ','
      << format_p(report.ttest_o.p_two_sided) << '\n';
  out << "ttest,hapax," << format_fixed(report.ttest_h.t) << ',' << report.ttest_h.df << ','
      << format_p(report.ttest_h.p_two_sided) << '\n';
}

void write_report_table(std::ostream& out, const CrossValReport& report) {
  const auto& fs = report.functions;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  auto add_counts = [&](const std::string& label, auto member) {
    for (std::size_t f = 0; f < fs.size(); ++f) {
      std::vector<std::string> cells;
      for (const auto& fold : report.folds) cells.push_back(std::to_string(member(fold)[f]));
      rows.emplace_back(label + "(" + fs[f] + ")", std::move(cells));
    }
  };
  auto add_probabilities = [&](const std::string& label, auto member) {
    for (std::size_t f = 0; f < fs.size(); ++f) {
      std::vector<std::string> cells;
      for (const auto& fold : report.folds) cells.push_back(format_fixed(member(fold).probabilities[f]));
      rows.emplace_back(label + "(" + fs[f] + ")", std::move(cells));
    }
  };

  {
    std::vector<std::string> runs;
    for (const auto& fold : report.folds) runs.push_back(std::to_string(fold.run));
    rows.emplace_back("Run", std::move(runs));
  }
  add_counts("N", [](const FoldResult& r) -> const auto& { return r.train_totals; });
  add_probabilities("OMLE", [](const FoldResult& r) -> const auto& { return r.omle; });
  add_counts("N1", [](const FoldResult& r) -> const auto& { return r.hapax_totals; });
  add_probabilities("HMLE", [](const FoldResult& r) -> const auto& { return r.hmle; });
  add_counts("N0", [](const FoldResult& r) -> const auto& { return r.unseen_observed; });
  for (std::size_t f = 0; f < fs.size(); ++f) {
    std::vector<std::string> cells;
    for (const auto& fold : report.folds) cells.push_back(std::to_string(fold.expected_o.rounded[f]));
    rows.emplace_back("Eo(N0(" + fs[f] + "))", std::move(cells));
  }
  for (std::size_t f = 0; f < fs.size(); ++f) {
    std::vector<std::string> cells;
    for (const auto& fold : report.folds) cells.push_back(std::to_string(fold.expected_h.rounded[f]));
    rows.emplace_back("Eh(N0(" + fs[f] + "))", std::move(cells));
  }

  std::size_t label_width = 0;
  std::size_t cell_width = 0;
  for (const auto& [label, cells] : rows) {
    label_width = std::max(label_width, label.size());
    for (const auto& c : cells) cell_width = std::max(cell_width, c.size());
  }

  out << "Cross-validation of " << report.spec_name << ": k=" << report.k
      << " seed=" << report.seed << " ratio=" << ratio_label(report) << "\n\n";
  for (const auto& [label, cells] : rows) {
    out << std::left << std::setw(static_cast<int>(label_width)) << label << std::right;
    for (const auto& c : cells) out << "  " << std::setw(static_cast<int>(cell_width)) << c;
    out << '\n';
  }
  out << '\n';
  out << "paired t, observed vs overall MLE: t=" << format_fixed(report.ttest_o.t)
      << " df=" << report.ttest_o.df << " p=" << format_p(report.ttest_o.p_two_sided) << '\n';
  out << "paired t, observed vs hapax MLE:   t=" << format_fixed(report.ttest_h.t)
      << " df=" << report.ttest_h.df << " p=" << format_p(report.ttest_h.p_two_sided) << '\n';
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Lexical prior estimation for ambiguous word forms", "hapaxprior"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Token, type and hapax totals per function");
  add_input_options(spectrum, config);
  add_out_option(spectrum, config);

  auto* priors = app.add_subcommand("priors", "Backoff prior for each requested form");
  add_input_options(priors, config);
  add_out_option(priors, config);
  priors->add_option("--form", config.forms, "Form to estimate (repeatable)");
  priors->add_option("--forms-file", config.forms_file, "File with one form per line");
  priors->add_option("--threshold", config.threshold,
                     "Minimum count for a form to use its own estimate")
      ->check(CLI::Range(std::int64_t{1}, INT64_MAX));

  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation as CSV");
  add_input_options(crossval, config);
  add_out_option(crossval, config);
  add_crossval_options(crossval, config);

  auto* report = app.add_subcommand("report", "k-fold cross-validation as a text table");
  add_input_options(report, config);
  add_out_option(report, config);
  add_crossval_options(report, config);

  auto* figure = app.add_subcommand("figure", "Proportion per frequency class with smoothing");
  add_input_options(figure, config);
  add_out_option(figure, config);
  figure->add_option("--smooth-window", config.smooth_window, "Running median window (odd, >= 3)")
      ->check([](const std::string& s) -> std::string {
        int w = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), w);
        if (ec != std::errc() || ptr != s.data() + s.size() || w < 3 || w % 2 == 0) {
          return "window must be an odd integer >= 3";
        }
        return {};
      });
  figure->add_option("--reference", config.reference, "Function whose share is plotted");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus and truth sidecar");
  add_out_option(synth, config);
  synth->add_option("--seed", config.seed, "Generator seed");
  synth->add_option("--truth", config.truth_out, "Truth CSV path (default: <out>.truth.csv)");
  synth->add_option("--spec-out", config.spec_out, "Write the matching class spec here");
  synth->add_option("--n-types", config.n_types, "Number of types")
      ->check(CLI::Range(std::int64_t{2}, INT64_MAX));
  synth->add_option("--zipf-exponent", config.zipf_exponent, "Zipf exponent")
      ->check(CLI::PositiveNumber);
  synth->add_option("--tokens", config.tokens, "Total token count");
  synth->add_option("--p-high", config.p_high, "Reference probability, most frequent type")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--p-low", config.p_low, "Reference probability, rarest type")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--functions", config.functions, "Two labels, reference first");
  synth->add_option("--suffix", config.suffix, "Suffix appended to every form");
  synth->add_option("--allocation", config.allocation, "Token allocation: sampled or exact")
      ->check(CLI::IsMember({"sampled", "exact"}));

  std::vector<const char*> args;
  args.reserve(argv.size());
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  config.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (config.out) {
      std::ostringstream buffer;
      const int code = execute(config, buffer, err);
      write_file(*config.out, buffer.str());
      return code;
    }
    return execute(config, out, err);
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace hapaxprior::cli
