#pragma once

#include <map>
#include <string>
#include <vector>

#include "cometlens/model.hpp"
#include "cometlens/segment.hpp"

namespace cometlens {

// A block of two or more aligned actors concurrent with at least one
// other block on a different focus. Derived 1:1 from a NON_INT episode
// whose largest block has >= 2 actors; its interval equals the episode's.
struct CoalitionEpisode {
  TimeInterval interval;
  std::vector<std::string> coalition_block;  // sorted actors, size >= 2
  std::string coalition_focus;
  std::vector<Block> opposed;  // remaining blocks
  DisalignmentType disalignment = DisalignmentType::Mixed;
  // actor -> modality -> number of units active inside the episode,
  // for every actor active in it (coalition and opposition alike).
  std::map<std::string, std::map<Modality, int>> modality_profile;
};

// Two equal-sized largest blocks produce one coalition each, over the
// same interval. Sorted by start time, then block order.
std::vector<CoalitionEpisode> detect_coalitions(const std::vector<Episode>& episodes,
                                                const Corpus& corpus);

struct CoalitionAgg {
  int count = 0;
  TimeMs total_ms = 0;

  bool operator==(const CoalitionAgg&) const = default;
};

struct CoalitionSummary {
  int count = 0;
  TimeMs total_ms = 0;
  std::map<std::string, CoalitionAgg> by_type;        // disalignment token
  std::map<std::string, CoalitionAgg> by_membership;  // "C+M"
  std::map<std::string, CoalitionAgg> by_profile;     // "C=V1G0,M=V2G1"
};

CoalitionSummary coalition_summary(const std::vector<CoalitionEpisode>& coalitions,
                                   const Corpus& corpus);

std::string membership_key(const CoalitionEpisode& coalition);
std::string profile_key(const CoalitionEpisode& coalition);

}  // namespace cometlens
