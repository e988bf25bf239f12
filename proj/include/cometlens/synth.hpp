#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cometlens/coalition.hpp"
#include "cometlens/model.hpp"
#include "cometlens/segment.hpp"

namespace cometlens {

struct ScheduleSegment {
  TimeInterval interval;
  std::map<std::string, ObjectRef> focus;  // actor -> assigned object
};

// Generation recipe with known ground truth. The schedule must tile
// [0, span]; actors without an assignment in a segment stay silent there.
struct SynthSpec {
  std::uint64_t seed = 0;
  std::vector<std::string> actors;
  TimeMs span_ms = 0;
  std::vector<ScheduleSegment> schedule;
  double unit_rate = 10.0;     // units per minute per actor
  double modality_mix = 0.25;  // probability a unit is gestural
  TimeMs jitter_ms = 0;        // bound on boundary perturbation
  Granularity granularity = Granularity::Problem;  // truth partitioning level

  void validate() const;  // throws E_SPEC
};

SynthSpec synth_spec_from_json(const std::string& text);  // throws E_SPEC
std::string synth_spec_to_json(const SynthSpec& spec);

// Expected analysis results derived analytically from the schedule,
// before jitter. Leading and trailing idle segments are trimmed (nothing
// observable happens there); coalition modality profiles stay empty.
struct GroundTruth {
  std::vector<Episode> episodes;
  std::vector<CoalitionEpisode> coalitions;
};

// Deterministic given the seed (mt19937_64 plus inverse-CDF sampling;
// no distribution objects with unspecified algorithms). Per actor,
// units tile each scheduled stretch back to back, cut by a renewal
// process with exponential durations, with mandatory cuts at focus
// changes; jitter then perturbs the cut points.
std::pair<Corpus, GroundTruth> generate(const SynthSpec& spec);

std::string ground_truth_to_json(const GroundTruth& truth);

}  // namespace cometlens
