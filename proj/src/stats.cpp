#include "cometlens/stats.hpp"

#include <algorithm>

namespace cometlens {

namespace {

std::string modality_pair_token(Modality a, Modality b) {
  // Canonical order: verbal before gestural.
  if (a == Modality::Gestural && b == Modality::Verbal) std::swap(a, b);
  return modality_long_token(a) + "x" + modality_long_token(b);
}

std::string space_pair_token(Space a, Space b) {
  if (static_cast<int>(a) > static_cast<int>(b)) std::swap(a, b);
  return std::string(to_token(a)) + "x" + to_token(b);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted.push_back(c);
  }
  quoted += "\"";
  return quoted;
}

}  // namespace

CoOccurrenceMatrix co_occurrence(const std::vector<ClassifiedPair>& pairs,
                                 const AnalysisConfig& config) {
  (void)config;
  CoOccurrenceMatrix matrix;
  for (const auto& p : pairs) {
    auto key = std::make_tuple(modality_pair_token(p.modality_a, p.modality_b),
                               std::string(to_token(p.verdict)),
                               space_pair_token(p.space_a, p.space_b));
    auto& cell = matrix.cells[key];
    cell.count += 1;
    cell.total_overlap_ms += p.overlap_ms;
    matrix.total += 1;
  }
  return matrix;
}

std::string co_occurrence_csv(const CoOccurrenceMatrix& matrix) {
  std::string out = "modality_pair,verdict,space_pair,count,total_overlap_s\n";
  for (const auto& [key, cell] : matrix.cells) {
    out += csv_field(std::get<0>(key)) + "," + csv_field(std::get<1>(key)) + "," +
           csv_field(std::get<2>(key)) + "," + std::to_string(cell.count) + "," +
           format_seconds(cell.total_overlap_ms) + "\n";
  }
  return out;
}

std::string transition_state(const AnnotationUnit& unit) {
  return verbal_action_token(*unit.v_action) + "/" + to_token(space_of(unit.object));
}

TransitionMatrix transitions(const Corpus& corpus, TransitionScope scope) {
  std::vector<const AnnotationUnit*> verbal;
  for (const auto& u : corpus.units) {
    if (u.is_verbal()) verbal.push_back(&u);
  }
  if (verbal.empty()) throw Error(Code::E_NO_VERBAL, "corpus has no verbal units");

  std::sort(verbal.begin(), verbal.end(), [](const AnnotationUnit* a, const AnnotationUnit* b) {
    if (a->interval.start_ms != b->interval.start_ms)
      return a->interval.start_ms < b->interval.start_ms;
    return a->unit_id < b->unit_id;
  });

  TransitionMatrix matrix;
  matrix.scope = scope;
  if (scope == TransitionScope::Pooled) {
    auto& cells = matrix.cells["*"];
    for (std::size_t i = 0; i + 1 < verbal.size(); ++i) {
      cells[{transition_state(*verbal[i]), transition_state(*verbal[i + 1])}] += 1;
    }
  } else {
    std::map<std::string, std::vector<const AnnotationUnit*>> per_actor;
    for (const auto* u : verbal) per_actor[u->actor].push_back(u);
    for (const auto& [actor, units] : per_actor) {
      auto& cells = matrix.cells[actor];
      cells = {};
      for (std::size_t i = 0; i + 1 < units.size(); ++i) {
        cells[{transition_state(*units[i]), transition_state(*units[i + 1])}] += 1;
      }
    }
  }
  return matrix;
}

std::map<std::string, std::map<std::string, int>> TransitionMatrix::row_totals() const {
  std::map<std::string, std::map<std::string, int>> totals;
  for (const auto& [sequence, cell_map] : cells) {
    for (const auto& [fromto, count] : cell_map) {
      totals[sequence][fromto.first] += count;
    }
  }
  return totals;
}

std::string transitions_csv(const TransitionMatrix& matrix) {
  std::string out = "scope,actor,from,to,count\n";
  const char* scope = matrix.scope == TransitionScope::Pooled ? "POOLED" : "PER_ACTOR";
  for (const auto& [actor, cell_map] : matrix.cells) {
    for (const auto& [fromto, count] : cell_map) {
      out += std::string(scope) + "," + csv_field(actor) + "," + csv_field(fromto.first) + "," +
             csv_field(fromto.second) + "," + std::to_string(count) + "\n";
    }
  }
  return out;
}

TimeMs DurationStats::mean_ms() const {
  if (count == 0) return 0;
  return (total_ms + count / 2) / count;
}

namespace {

void record(DurationStats& stats, TimeMs duration_ms) {
  stats.count += 1;
  stats.total_ms += duration_ms;
  stats.histogram[static_cast<int>(duration_ms / 100)] += 1;
}

}  // namespace

DurationReport durations(const std::vector<Episode>& episodes,
                         const std::vector<CoalitionEpisode>& coalitions) {
  DurationReport report;
  if (episodes.empty()) return report;

  for (EpisodeLabel l : {EpisodeLabel::Idle, EpisodeLabel::Solo, EpisodeLabel::Int,
                         EpisodeLabel::NonInt}) {
    report.by_label[to_token(l)];
  }
  for (const auto& e : episodes) {
    record(report.by_label[to_token(e.label)], e.interval.duration_ms());
    report.span_ms += e.interval.duration_ms();
  }
  for (const auto& c : coalitions) record(report.coalitions, c.interval.duration_ms());
  return report;
}

std::string durations_csv(const DurationReport& report) {
  std::string out = "kind,label,bin_start_s,count,total_s,mean_s\n";
  auto summary_row = [&](const std::string& label, const DurationStats& s) {
    out += "summary," + csv_field(label) + ",-," + std::to_string(s.count) + "," +
           format_seconds(s.total_ms) + "," + format_seconds(s.mean_ms()) + "\n";
  };
  auto histogram_rows = [&](const std::string& label, const DurationStats& s) {
    for (const auto& [bin, count] : s.histogram) {
      out += "histogram," + csv_field(label) + "," + format_seconds(bin * 100) + "," +
             std::to_string(count) + ",-,-\n";
    }
  };
  for (const auto& [label, stats] : report.by_label) summary_row(label, stats);
  summary_row("COALITION", report.coalitions);
  for (const auto& [label, stats] : report.by_label) histogram_rows(label, stats);
  histogram_rows("COALITION", report.coalitions);
  return out;
}

}  // namespace cometlens
