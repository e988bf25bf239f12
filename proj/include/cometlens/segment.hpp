#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cometlens/intervals.hpp"
#include "cometlens/model.hpp"

namespace cometlens {

enum class EpisodeLabel { Idle, Solo, Int, NonInt };

const char* to_token(EpisodeLabel l);
std::optional<EpisodeLabel> parse_episode_label(const std::string& token);

// One actor's focus during a slice: the objects of all their active
// units. intra_actor_aligned is false when those objects disagree at the
// configured granularity, in which case the actor forms a singleton
// block flagged intra_split.
struct ActorFocus {
  std::string actor;
  std::vector<ObjectRef> focus_objects;
  bool intra_actor_aligned = true;
};

struct Block {
  std::vector<std::string> actors;  // sorted
  std::string focus;                // match key at config granularity; "|"-joined when split
  bool intra_split = false;

  bool operator==(const Block&) const = default;
};

// Space shared by everything the block focuses on; nullopt when a split
// block straddles spaces.
std::optional<Space> block_space(const Block& block);

struct Episode {
  TimeInterval interval;
  EpisodeLabel label = EpisodeLabel::Idle;
  std::vector<Block> blocks;  // sorted by (focus, first actor); empty for Idle
};

struct Segmentation {
  std::vector<Episode> episodes;
  std::vector<Diag> warnings;  // sub-threshold merges
};

// Maximal constant-partition episodes tiling the corpus span. Episodes
// shorter than config.min_episode_ms are absorbed into their predecessor
// (the first one into its successor) with a warning, then equal
// neighbours re-coalesce. Throws E_EMPTY.
Segmentation segment(const Corpus& corpus, const AnalysisConfig& config);

// Per-actor focuses for one timeline slice, sorted by actor. Exposed for
// inspection and property tests; segment() builds on it.
std::vector<ActorFocus> slice_focuses(const Corpus& corpus,
                                      const TimelineSlice& slice,
                                      const AnalysisConfig& config);

enum class DisalignmentType {
  ProblemShift,
  ProblemVsGroup,
  ProblemVsDomain,
  GroupVsDomain,
  WithinGroup,
  WithinDomain,
  Mixed,
};

const char* to_token(DisalignmentType t);

// Taxonomy over the block-focus spaces of a NON_INT episode:
//   one space, two blocks, problem/solution -> ProblemShift
//   one space, group / domain              -> WithinGroup / WithinDomain
//   two spaces                              -> the corresponding X_VS_Y
//   three spaces, >2 problem-space blocks, or any space-straddling
//   split block                             -> Mixed
// Throws E_NOT_DISALIGNED on any other label.
DisalignmentType classify_disalignment(const Episode& episode);

}  // namespace cometlens
