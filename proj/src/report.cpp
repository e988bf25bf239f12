#include "cometlens/report.hpp"

#include "json.hpp"

namespace cometlens {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json diag_json(const Diag& d) {
  ordered_json j;
  j["line"] = d.line;
  j["code"] = code_name(d.code);
  j["message"] = d.message;
  return j;
}

ordered_json diags_json(const std::vector<Diag>& diags) {
  ordered_json arr = ordered_json::array();
  for (const auto& d : diags) arr.push_back(diag_json(d));
  return arr;
}

ordered_json config_json(const AnalysisConfig& config) {
  ordered_json j;
  j["granularity"] = to_token(config.granularity);
  j["gap_tolerance"] = format_seconds(config.gap_tolerance_ms);
  j["min_episode_duration"] = format_seconds(config.min_episode_ms);
  j["time_resolution_ms"] = AnalysisConfig::time_resolution_ms;
  j["include_near"] = config.include_near;
  return j;
}

ordered_json interval_json(const TimeInterval& i) {
  ordered_json j;
  j["t_start"] = format_seconds(i.start_ms);
  j["t_end"] = format_seconds(i.end_ms);
  return j;
}

ordered_json parse_json(const ParseReport& report) {
  ordered_json j;
  j["unit_count"] = report.unit_count;
  j["errors"] = diags_json(report.errors);
  j["warnings"] = diags_json(report.warnings);
  return j;
}

ordered_json pairs_json(const AnalysisResult& r) {
  ordered_json j;
  j["count"] = r.pairs.size();
  std::map<std::string, int> by_relation;
  std::map<std::string, int> by_verdict;
  ordered_json items = ordered_json::array();
  for (const auto& c : r.pairs) {
    by_relation[to_token(c.pair.relation)] += 1;
    by_verdict[to_token(c.verdict)] += 1;
    ordered_json ji;
    ji["a"] = c.pair.unit_a;
    ji["b"] = c.pair.unit_b;
    ji["relation"] = to_token(c.pair.relation);
    ji["shared"] = interval_json(c.pair.shared);
    ji["verdict"] = to_token(c.verdict);
    ji["scope"] = to_token(c.scope);
    ordered_json levels;
    levels["INSTANCE"] = c.levels[0];
    levels["PROBLEM"] = c.levels[1];
    levels["SPACE"] = c.levels[2];
    ji["levels"] = std::move(levels);
    ji["modality_relation"] = to_token(c.relation);
    items.push_back(std::move(ji));
  }
  j["by_relation"] = by_relation;
  j["by_verdict"] = by_verdict;
  j["items"] = std::move(items);
  return j;
}

ordered_json blocks_json(const std::vector<Block>& blocks) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : blocks) {
    ordered_json jb;
    jb["actors"] = b.actors;
    jb["focus"] = b.focus;
    jb["intra_split"] = b.intra_split;
    arr.push_back(std::move(jb));
  }
  return arr;
}

ordered_json episodes_json_section(const AnalysisResult& r) {
  ordered_json j;
  j["count"] = r.episodes.size();
  std::map<std::string, int> by_label;
  ordered_json items = ordered_json::array();
  for (const auto& e : r.episodes) {
    by_label[to_token(e.label)] += 1;
    ordered_json je;
    je["t_start"] = format_seconds(e.interval.start_ms);
    je["t_end"] = format_seconds(e.interval.end_ms);
    je["label"] = to_token(e.label);
    je["blocks"] = blocks_json(e.blocks);
    items.push_back(std::move(je));
  }
  j["by_label"] = by_label;
  j["items"] = std::move(items);
  return j;
}

ordered_json agg_json(const CoalitionAgg& agg) {
  ordered_json j;
  j["count"] = agg.count;
  j["total_duration"] = format_seconds(agg.total_ms);
  return j;
}

ordered_json coalitions_json_section(const AnalysisResult& r) {
  ordered_json j;
  j["count"] = r.coalitions.size();
  ordered_json items = ordered_json::array();
  for (const auto& c : r.coalitions) {
    ordered_json jc;
    jc["t_start"] = format_seconds(c.interval.start_ms);
    jc["t_end"] = format_seconds(c.interval.end_ms);
    jc["coalition"] = c.coalition_block;
    jc["focus"] = c.coalition_focus;
    jc["opposed"] = blocks_json(c.opposed);
    jc["disalignment"] = to_token(c.disalignment);
    ordered_json profile;
    for (const auto& [actor, counts] : c.modality_profile) {
      ordered_json pa;
      for (const auto& [modality, n] : counts) pa[modality_long_token(modality)] = n;
      profile[actor] = std::move(pa);
    }
    jc["modality_profile"] = std::move(profile);
    items.push_back(std::move(jc));
  }
  j["items"] = std::move(items);
  ordered_json summary;
  summary["count"] = r.coalition_sum.count;
  summary["total_duration"] = format_seconds(r.coalition_sum.total_ms);
  ordered_json by_type;
  for (const auto& [k, v] : r.coalition_sum.by_type) by_type[k] = agg_json(v);
  summary["by_type"] = std::move(by_type);
  ordered_json by_membership;
  for (const auto& [k, v] : r.coalition_sum.by_membership) by_membership[k] = agg_json(v);
  summary["by_membership"] = std::move(by_membership);
  ordered_json by_profile;
  for (const auto& [k, v] : r.coalition_sum.by_profile) by_profile[k] = agg_json(v);
  summary["by_profile"] = std::move(by_profile);
  j["summary"] = std::move(summary);
  return j;
}

ordered_json cooc_json(const CoOccurrenceMatrix& m) {
  ordered_json j;
  j["total"] = m.total;
  ordered_json cells = ordered_json::array();
  for (const auto& [key, cell] : m.cells) {
    ordered_json jc;
    jc["modalities"] = std::get<0>(key);
    jc["verdict"] = std::get<1>(key);
    jc["spaces"] = std::get<2>(key);
    jc["count"] = cell.count;
    jc["total_overlap"] = format_seconds(cell.total_overlap_ms);
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j;
}

ordered_json transitions_json(const TransitionMatrix& m) {
  ordered_json j;
  ordered_json sequences = ordered_json::object();
  auto totals = m.row_totals();
  for (const auto& [actor, cell_map] : m.cells) {
    ordered_json js;
    ordered_json cells = ordered_json::array();
    for (const auto& [fromto, count] : cell_map) {
      ordered_json jc;
      jc["from"] = fromto.first;
      jc["to"] = fromto.second;
      jc["count"] = count;
      cells.push_back(std::move(jc));
    }
    js["cells"] = std::move(cells);
    js["row_totals"] = totals[actor];
    sequences[actor] = std::move(js);
  }
  j["sequences"] = std::move(sequences);
  return j;
}

ordered_json duration_stats_json(const DurationStats& s) {
  ordered_json j;
  j["count"] = s.count;
  j["total"] = format_seconds(s.total_ms);
  j["mean"] = format_seconds(s.mean_ms());
  ordered_json hist = ordered_json::object();
  for (const auto& [bin, count] : s.histogram) hist[format_seconds(bin * 100)] = count;
  j["histogram"] = std::move(hist);
  return j;
}

ordered_json durations_json(const DurationReport& r) {
  ordered_json j;
  j["span"] = format_seconds(r.span_ms);
  ordered_json labels = ordered_json::object();
  for (const auto& [label, stats] : r.by_label) labels[label] = duration_stats_json(stats);
  j["labels"] = std::move(labels);
  j["coalitions"] = duration_stats_json(r.coalitions);
  return j;
}

ordered_json stats_json_section(const AnalysisResult& r) {
  ordered_json j;
  j["co_occurrence"] = cooc_json(r.cooc);
  if (r.pooled_transitions) {
    ordered_json t;
    t["pooled"] = transitions_json(*r.pooled_transitions);
    t["per_actor"] = transitions_json(*r.per_actor_transitions);
    j["transitions"] = std::move(t);
  } else {
    j["transitions"] = nullptr;
  }
  j["durations"] = durations_json(r.duration_report);
  return j;
}

ordered_json header_json(const AnalysisResult& r) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_json(r.config);
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

AnalysisResult run_analysis(Corpus corpus, ParseReport parse, AnalysisConfig config) {
  config.validate();

  AnalysisResult result;
  result.config = config;
  result.parse = std::move(parse);
  result.corpus = std::move(corpus);

  auto raw_pairs = find_parallel_pairs(result.corpus, config);
  result.pairs = classify_pairs(result.corpus, raw_pairs, config);

  if (!result.corpus.units.empty()) {
    Segmentation seg = segment(result.corpus, config);
    result.episodes = std::move(seg.episodes);
    result.warnings = std::move(seg.warnings);
  }
  result.coalitions = detect_coalitions(result.episodes, result.corpus);
  result.coalition_sum = coalition_summary(result.coalitions, result.corpus);
  result.cooc = co_occurrence(result.pairs, config);
  if (result.corpus.verbal_count() > 0) {
    result.pooled_transitions = transitions(result.corpus, TransitionScope::Pooled);
    result.per_actor_transitions = transitions(result.corpus, TransitionScope::PerActor);
  }
  result.duration_report = durations(result.episodes, result.coalitions);
  return result;
}

std::string report_to_json(const AnalysisResult& result) {
  ordered_json j = header_json(result);
  j["parse"] = parse_json(result.parse);
  j["actors"] = result.corpus.actors;
  if (result.corpus.units.empty()) {
    j["span"] = nullptr;
  } else {
    j["span"] = interval_json(result.corpus.span());
  }
  j["pairs"] = pairs_json(result);
  j["episodes"] = episodes_json_section(result);
  j["coalitions"] = coalitions_json_section(result);
  j["stats"] = stats_json_section(result);
  j["warnings"] = diags_json(result.warnings);
  return dump(j);
}

std::string parse_report_to_json(const ParseReport& report) {
  return dump(parse_json(report));
}

std::string episodes_to_json(const AnalysisResult& result,
                             const std::vector<PatternMatch>* matches) {
  ordered_json j = header_json(result);
  j["episodes"] = episodes_json_section(result);
  if (matches) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : *matches) {
      ordered_json jm;
      jm["first"] = m.first;
      jm["last"] = m.last;
      jm["t_start"] = format_seconds(m.span.start_ms);
      jm["t_end"] = format_seconds(m.span.end_ms);
      arr.push_back(std::move(jm));
    }
    j["matches"] = std::move(arr);
  }
  j["warnings"] = diags_json(result.warnings);
  return dump(j);
}

std::string coalitions_to_json(const AnalysisResult& result) {
  ordered_json j = header_json(result);
  j["coalitions"] = coalitions_json_section(result);
  return dump(j);
}

std::string stats_to_json(const AnalysisResult& result) {
  ordered_json j = header_json(result);
  j["stats"] = stats_json_section(result);
  return dump(j);
}

}  // namespace cometlens
