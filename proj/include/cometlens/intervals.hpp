#pragma once

#include <string>
#include <vector>

#include "cometlens/model.hpp"

namespace cometlens {

// SIMULTANEOUS: identical intervals. OVERLAP: positive intersection, or a
// point unit inside the other unit's closed interval. NEAR: disjoint with
// gap <= the configured tolerance.
enum class PairRelation { Simultaneous, Overlap, Near };

const char* to_token(PairRelation r);

struct ParallelPair {
  std::string unit_a;  // unit_a < unit_b lexicographically
  std::string unit_b;
  PairRelation relation = PairRelation::Overlap;
  TimeInterval shared;  // intersection; the gap interval for Near

  bool operator==(const ParallelPair&) const = default;
};

// All parallel pairs across actors and modalities (same-actor
// cross-modality pairs included), sorted by (unit_a, unit_b). Sweep over
// start-ordered units with an expiry window: O(n log n + k) since every
// window entry examined yields a reported pair.
std::vector<ParallelPair> find_parallel_pairs(const Corpus& corpus,
                                              const AnalysisConfig& config);

struct TimelineSlice {
  TimeInterval interval;
  std::vector<std::size_t> active;  // indices into corpus.units
};

// Slices between consecutive event boundaries; they partition
// [min t_start, max t_end]. A unit is active in a slice iff its interval
// contains the slice's interior, so zero-length units never enter a
// positive slice (they still pair via find_parallel_pairs).
struct Timeline {
  std::vector<TimeMs> boundaries;
  std::vector<TimelineSlice> slices;
};

Timeline build_timeline(const Corpus& corpus);  // E_EMPTY

}  // namespace cometlens
