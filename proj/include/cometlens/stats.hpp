#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cometlens/classify.hpp"
#include "cometlens/coalition.hpp"
#include "cometlens/segment.hpp"

namespace cometlens {

struct CoOccurrenceCell {
  int count = 0;
  TimeMs total_overlap_ms = 0;
};

// Axes: modality pair ("VERBALxGESTURAL"), integration verdict, space
// pair ("PROBLEM_SOLUTIONxGROUP"). Cell counts sum to the number of
// classified pairs.
struct CoOccurrenceMatrix {
  std::map<std::tuple<std::string, std::string, std::string>, CoOccurrenceCell> cells;
  int total = 0;
};

CoOccurrenceMatrix co_occurrence(const std::vector<ClassifiedPair>& pairs,
                                 const AnalysisConfig& config);
std::string co_occurrence_csv(const CoOccurrenceMatrix& matrix);

enum class TransitionScope { PerActor, Pooled };

// States are verbal action keys crossed with spaces, e.g.
// "EVAL+/PROBLEM_SOLUTION". Transitions run over verbal units ordered by
// t_start (ties by unit_id) within each sequence; the pooled scope uses
// the key "*".
struct TransitionMatrix {
  TransitionScope scope = TransitionScope::Pooled;
  std::map<std::string, std::map<std::pair<std::string, std::string>, int>> cells;

  // Occurrences of a state that have a successor, per sequence.
  std::map<std::string, std::map<std::string, int>> row_totals() const;
};

TransitionMatrix transitions(const Corpus& corpus, TransitionScope scope);  // E_NO_VERBAL
std::string transitions_csv(const TransitionMatrix& matrix);

std::string transition_state(const AnnotationUnit& unit);  // verbal units only

struct DurationStats {
  int count = 0;
  TimeMs total_ms = 0;
  std::map<int, int> histogram;  // 100 ms bin index -> count

  TimeMs mean_ms() const;  // rounded half up; 0 when count == 0
};

struct DurationReport {
  std::map<std::string, DurationStats> by_label;  // empty for an empty episode list
  DurationStats coalitions;
  TimeMs span_ms = 0;
};

DurationReport durations(const std::vector<Episode>& episodes,
                         const std::vector<CoalitionEpisode>& coalitions);
std::string durations_csv(const DurationReport& report);

}  // namespace cometlens
