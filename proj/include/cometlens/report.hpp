#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cometlens/classify.hpp"
#include "cometlens/coalition.hpp"
#include "cometlens/io.hpp"
#include "cometlens/pattern.hpp"
#include "cometlens/segment.hpp"
#include "cometlens/stats.hpp"

namespace cometlens {

inline constexpr const char* kToolName = "cometlens";
inline constexpr const char* kToolVersion = "1.0.0";

// Everything one batch run produces. Reports built from this are
// self-contained (config echoed) and byte-stable for a given
// (corpus, config) pair.
struct AnalysisResult {
  AnalysisConfig config;
  ParseReport parse;
  Corpus corpus;
  std::vector<ClassifiedPair> pairs;
  std::vector<Episode> episodes;
  std::vector<CoalitionEpisode> coalitions;
  CoalitionSummary coalition_sum;
  CoOccurrenceMatrix cooc;
  std::optional<TransitionMatrix> pooled_transitions;     // absent without verbal units
  std::optional<TransitionMatrix> per_actor_transitions;
  DurationReport duration_report;
  std::vector<Diag> warnings;  // analysis-stage warnings (episode merges)
};

AnalysisResult run_analysis(Corpus corpus, ParseReport parse, AnalysisConfig config);

// Serializers. Fixed key order, three-decimal times, single trailing
// newline; identical inputs give identical bytes.
std::string report_to_json(const AnalysisResult& result);
std::string parse_report_to_json(const ParseReport& report);
std::string episodes_to_json(const AnalysisResult& result,
                             const std::vector<PatternMatch>* matches = nullptr);
std::string coalitions_to_json(const AnalysisResult& result);
std::string stats_to_json(const AnalysisResult& result);

}  // namespace cometlens
