// Batch analysis of coded multimodal design-meeting corpora: validation,
// parallelism and alignment classification, episode segmentation,
// coalition detection, statistics, and synthetic corpus generation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cometlens/report.hpp"
#include "cometlens/synth.hpp"

#include <unistd.h>

namespace {

using namespace cometlens;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

struct CliError {
  int exit_code;
  std::string message;
};

bool use_color() {
  if (std::getenv("COMETLENS_NO_COLOR") != nullptr) return false;
  return isatty(fileno(stdout));
}

std::string styled(const std::string& text, const char* code) {
  if (!use_color()) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitValidation, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitValidation, "cannot write " + path};
  out << bytes;
}

Format resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "tsv") return Format::Tsv;
  if (flag == "doc") return Format::Doc;
  if (flag != "auto") throw CliError{kExitConfig, "unknown format '" + flag + "'"};
  if (path == "-") return Format::Tsv;  // standard input is TSV only
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return Format::Doc;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".doc") return Format::Doc;
  return Format::Tsv;
}

struct ConfigFlags {
  std::string granularity = "problem";
  std::string gap_tol = "1.000";
  std::string min_episode = "0.000";
  bool no_near = false;

  AnalysisConfig resolve() const {
    AnalysisConfig config;
    auto g = parse_granularity(granularity);
    if (!g) throw CliError{kExitConfig, "unknown granularity '" + granularity + "'"};
    config.granularity = *g;
    auto gap = parse_time(gap_tol);
    if (!gap) throw CliError{kExitConfig, "unparseable --gap-tol"};
    config.gap_tolerance_ms = *gap;
    auto min_ep = parse_time(min_episode);
    if (!min_ep) throw CliError{kExitConfig, "unparseable --min-episode"};
    config.min_episode_ms = *min_ep;
    config.include_near = !no_near;
    config.validate();
    return config;
  }
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--granularity", flags.granularity,
                  "Matching level: instance, problem or space (default problem)");
  cmd->add_option("--gap-tol", flags.gap_tol,
                  "NEAR-pair gap tolerance in seconds (default 1.000)");
  cmd->add_option("--min-episode", flags.min_episode,
                  "Merge episodes shorter than this many seconds (default 0.000)");
  cmd->add_flag("--no-near", flags.no_near, "Drop NEAR pairs from pair lists and stats");
}

// Parses the corpus or reports and throws. The W_EMPTY warning is added
// here, not in the parser: an empty corpus is valid but worth flagging on
// the command line.
ParseResult load_corpus(const std::string& path, const std::string& format_flag, bool warn_empty) {
  std::string bytes = read_input(path);
  ParseResult result = parse_corpus(bytes, resolve_format(format_flag, path));
  if (warn_empty && result.report.ok() && result.report.unit_count == 0) {
    result.report.warnings.push_back({0, Code::W_EMPTY, "corpus contains no units"});
  }
  return result;
}

void print_report_human(const ParseReport& report) {
  for (const auto& e : report.errors) {
    std::cout << "line " << e.line << ": " << code_name(e.code) << " " << e.message << "\n";
  }
  for (const auto& w : report.warnings) {
    std::cout << "line " << w.line << ": " << code_name(w.code) << " " << w.message << "\n";
  }
  if (report.ok()) {
    std::cout << styled("OK", "32") << ": " << report.unit_count << " units, "
              << report.warnings.size() << " warnings\n";
  } else {
    std::cout << styled("FAIL", "31") << ": " << report.errors.size() << " errors\n";
  }
}

int cmd_validate(const std::string& path, const std::string& format, bool json) {
  ParseResult result = load_corpus(path, format, true);
  if (json) {
    std::cout << parse_report_to_json(result.report);
  } else {
    print_report_human(result.report);
  }
  return result.report.ok() ? kExitOk : kExitValidation;
}

AnalysisResult analyze_file(const std::string& path, const std::string& format,
                            const ConfigFlags& flags) {
  ParseResult parsed = load_corpus(path, format, true);
  if (!parsed.report.ok()) {
    for (const auto& e : parsed.report.errors) {
      std::cerr << "line " << e.line << ": " << code_name(e.code) << " " << e.message << "\n";
    }
    throw CliError{kExitValidation, "corpus does not validate"};
  }
  return run_analysis(std::move(*parsed.corpus), std::move(parsed.report), flags.resolve());
}

std::string csv_sibling(const std::string& out, const std::string& suffix) {
  std::string stem = out;
  if (auto dot = stem.rfind(".json"); dot != std::string::npos && dot == stem.size() - 5)
    stem = stem.substr(0, dot);
  return stem + "." + suffix + ".csv";
}

int cmd_analyze(const std::string& path, const std::string& format, const ConfigFlags& flags,
                const std::string& out, bool csv) {
  if (csv && (out.empty() || out == "-"))
    throw CliError{kExitConfig, "--csv requires --out"};
  AnalysisResult result = analyze_file(path, format, flags);
  write_output(out, report_to_json(result));
  if (csv) {
    write_output(csv_sibling(out, "cooccurrence"), co_occurrence_csv(result.cooc));
    if (result.pooled_transitions) {
      std::string bytes = transitions_csv(*result.pooled_transitions) +
                          transitions_csv(*result.per_actor_transitions);
      write_output(csv_sibling(out, "transitions"), bytes);
    }
    write_output(csv_sibling(out, "durations"), durations_csv(result.duration_report));
  }
  return kExitOk;
}

int cmd_episodes(const std::string& path, const std::string& format, const ConfigFlags& flags,
                 const std::string& pattern, const std::string& out) {
  AnalysisResult result = analyze_file(path, format, flags);
  if (pattern.empty()) {
    write_output(out, episodes_to_json(result));
    return kExitOk;
  }
  std::string expr = pattern_preset(pattern).value_or(pattern);
  try {
    auto matches = match_pattern(result.episodes, expr);
    write_output(out, episodes_to_json(result, &matches));
  } catch (const Error& e) {
    if (e.code() == Code::E_PATTERN) throw CliError{kExitConfig, e.what()};
    throw;
  }
  return kExitOk;
}

int cmd_coalitions(const std::string& path, const std::string& format, const ConfigFlags& flags,
                   const std::string& out) {
  AnalysisResult result = analyze_file(path, format, flags);
  write_output(out, coalitions_to_json(result));
  return kExitOk;
}

int cmd_stats(const std::string& path, const std::string& format, const ConfigFlags& flags,
              const std::string& out, bool csv) {
  if (csv && (out.empty() || out == "-"))
    throw CliError{kExitConfig, "--csv requires --out"};
  AnalysisResult result = analyze_file(path, format, flags);
  write_output(out, stats_to_json(result));
  if (csv) {
    write_output(csv_sibling(out, "cooccurrence"), co_occurrence_csv(result.cooc));
    if (result.pooled_transitions) {
      std::string bytes = transitions_csv(*result.pooled_transitions) +
                          transitions_csv(*result.per_actor_transitions);
      write_output(csv_sibling(out, "transitions"), bytes);
    }
    write_output(csv_sibling(out, "durations"), durations_csv(result.duration_report));
  }
  return kExitOk;
}

int cmd_synth(const std::string& spec_path, bool seed_given, std::uint64_t seed,
              const std::string& out_corpus, const std::string& out_truth,
              const std::string& format) {
  SynthSpec spec;
  try {
    spec = synth_spec_from_json(read_input(spec_path));
  } catch (const Error& e) {
    throw CliError{kExitValidation, e.what()};
  }
  if (seed_given) spec.seed = seed;
  auto [corpus, truth] = generate(spec);
  Format f = format == "doc" ? Format::Doc : Format::Tsv;
  write_output(out_corpus, write_corpus(corpus, f));
  if (!out_truth.empty()) write_output(out_truth, ground_truth_to_json(truth));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cometlens: batch analysis of coded multimodal design-interaction corpora"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "auto";
  std::string out;
  bool json = false;
  bool csv = false;
  ConfigFlags flags;
  std::string pattern;
  std::string spec_path;
  std::uint64_t seed = 0;
  std::string out_corpus = "-";
  std::string out_truth;

  auto* validate = app.add_subcommand("validate", "Parse and validate a corpus file");
  validate->add_option("path", path, "Corpus file, or - for standard input")->required();
  validate->add_option("--format", format, "tsv, doc or auto");
  validate->add_flag("--json", json, "Emit the parse report as JSON");

  auto* analyze = app.add_subcommand("analyze", "Run the full analysis pipeline");
  analyze->add_option("path", path, "Corpus file, or - for standard input")->required();
  analyze->add_option("--format", format, "tsv, doc or auto");
  add_config_flags(analyze, flags);
  analyze->add_option("--out", out, "Report destination (default standard output)");
  analyze->add_flag("--csv", csv, "Also write matrix CSV files next to --out");

  auto* episodes = app.add_subcommand("episodes", "Segment the corpus into episodes");
  episodes->add_option("path", path, "Corpus file, or - for standard input")->required();
  episodes->add_option("--format", format, "tsv, doc or auto");
  add_config_flags(episodes, flags);
  episodes->add_option("--pattern", pattern,
                       "Label expression or preset name (e.g. composite) to match");
  episodes->add_option("--out", out, "Destination (default standard output)");

  auto* coalitions = app.add_subcommand("coalitions", "Detect coalition episodes");
  coalitions->add_option("path", path, "Corpus file, or - for standard input")->required();
  coalitions->add_option("--format", format, "tsv, doc or auto");
  add_config_flags(coalitions, flags);
  coalitions->add_option("--out", out, "Destination (default standard output)");

  auto* stats = app.add_subcommand("stats", "Co-occurrence, transition and duration statistics");
  stats->add_option("path", path, "Corpus file, or - for standard input")->required();
  stats->add_option("--format", format, "tsv, doc or auto");
  add_config_flags(stats, flags);
  stats->add_option("--out", out, "Destination (default standard output)");
  stats->add_flag("--csv", csv, "Also write matrix CSV files next to --out");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  synth->add_option("--spec", spec_path, "Generation spec document")->required();
  auto* seed_opt = synth->add_option("--seed", seed, "Override the spec seed");
  synth->add_option("--out-corpus", out_corpus, "Corpus destination (default standard output)");
  synth->add_option("--out-truth", out_truth, "Ground truth destination");
  synth->add_option("--format", format, "Corpus output format: tsv (default) or doc");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, format, json);
    if (analyze->parsed()) return cmd_analyze(path, format, flags, out, csv);
    if (episodes->parsed()) return cmd_episodes(path, format, flags, pattern, out);
    if (coalitions->parsed()) return cmd_coalitions(path, format, flags, out);
    if (stats->parsed()) return cmd_stats(path, format, flags, out, csv);
    if (synth->parsed())
      return cmd_synth(spec_path, seed_opt->count() > 0, seed, out_corpus, out_truth,
                       format == "auto" ? "tsv" : format);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Code::E_CONFIG:
      case Code::E_PATTERN:
        return kExitConfig;
      case Code::E_INTERNAL:
        return kExitInternal;
      default:
        return kExitValidation;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
