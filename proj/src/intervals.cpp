#include "cometlens/intervals.hpp"

#include <algorithm>

namespace cometlens {

const char* to_token(PairRelation r) {
  switch (r) {
    case PairRelation::Simultaneous: return "SIMULTANEOUS";
    case PairRelation::Overlap: return "OVERLAP";
    case PairRelation::Near: return "NEAR";
  }
  return "OVERLAP";
}

namespace {

bool closed_contains(const TimeInterval& i, TimeMs t) {
  return i.start_ms <= t && t <= i.end_ms;
}

// Relation between two intervals; gap_ok guaranteed by the caller's
// window for Near. Point units overlap anything whose closed interval
// contains them.
ParallelPair make_pair(const AnnotationUnit& a, const AnnotationUnit& b) {
  const AnnotationUnit& first = a.unit_id < b.unit_id ? a : b;
  const AnnotationUnit& second = a.unit_id < b.unit_id ? b : a;
  const TimeInterval& ia = first.interval;
  const TimeInterval& ib = second.interval;

  ParallelPair pair;
  pair.unit_a = first.unit_id;
  pair.unit_b = second.unit_id;

  TimeMs lo = std::max(ia.start_ms, ib.start_ms);
  TimeMs hi = std::min(ia.end_ms, ib.end_ms);
  if (ia == ib) {
    pair.relation = PairRelation::Simultaneous;
    pair.shared = ia;
  } else if (lo < hi || (ia.is_point() && closed_contains(ib, ia.start_ms)) ||
             (ib.is_point() && closed_contains(ia, ib.start_ms))) {
    pair.relation = PairRelation::Overlap;
    pair.shared = {lo, std::max(lo, hi)};
  } else {
    pair.relation = PairRelation::Near;
    pair.shared = {hi, lo};  // the gap between the two
  }
  return pair;
}

}  // namespace

std::vector<ParallelPair> find_parallel_pairs(const Corpus& corpus, const AnalysisConfig& config) {
  std::vector<ParallelPair> pairs;
  const auto& units = corpus.units;  // already start-ordered

  struct WindowEntry {
    TimeMs expiry;  // end + tolerance
    std::size_t index;
  };
  std::vector<WindowEntry> window;

  for (std::size_t i = 0; i < units.size(); ++i) {
    const TimeMs start = units[i].interval.start_ms;
    std::erase_if(window, [&](const WindowEntry& w) { return w.expiry < start; });
    for (const auto& w : window) {
      ParallelPair p = make_pair(units[w.index], units[i]);
      if (!config.include_near && p.relation == PairRelation::Near) continue;
      pairs.push_back(std::move(p));
    }
    window.push_back({units[i].interval.end_ms + config.gap_tolerance_ms, i});
  }

  std::sort(pairs.begin(), pairs.end(), [](const ParallelPair& a, const ParallelPair& b) {
    if (a.unit_a != b.unit_a) return a.unit_a < b.unit_a;
    return a.unit_b < b.unit_b;
  });
  return pairs;
}

Timeline build_timeline(const Corpus& corpus) {
  if (corpus.units.empty()) throw Error(Code::E_EMPTY, "cannot build a timeline without units");

  Timeline timeline;
  for (const auto& u : corpus.units) {
    timeline.boundaries.push_back(u.interval.start_ms);
    timeline.boundaries.push_back(u.interval.end_ms);
  }
  std::sort(timeline.boundaries.begin(), timeline.boundaries.end());
  timeline.boundaries.erase(std::unique(timeline.boundaries.begin(), timeline.boundaries.end()),
                            timeline.boundaries.end());

  if (timeline.boundaries.size() == 1) {
    // Degenerate corpus of point units at one instant: a single
    // zero-length slice keeps the span partitioned.
    TimelineSlice slice;
    slice.interval = {timeline.boundaries[0], timeline.boundaries[0]};
    for (std::size_t i = 0; i < corpus.units.size(); ++i) slice.active.push_back(i);
    timeline.slices.push_back(std::move(slice));
    return timeline;
  }

  for (std::size_t b = 0; b + 1 < timeline.boundaries.size(); ++b) {
    TimelineSlice slice;
    slice.interval = {timeline.boundaries[b], timeline.boundaries[b + 1]};
    for (std::size_t i = 0; i < corpus.units.size(); ++i) {
      const TimeInterval& u = corpus.units[i].interval;
      if (u.start_ms <= slice.interval.start_ms && u.end_ms >= slice.interval.end_ms &&
          !corpus.units[i].interval.is_point()) {
        slice.active.push_back(i);
      }
    }
    timeline.slices.push_back(std::move(slice));
  }
  return timeline;
}

}  // namespace cometlens
