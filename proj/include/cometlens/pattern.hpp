#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cometlens/segment.hpp"

namespace cometlens {

// Episode-label expressions: the alphabet is INT NON_INT SOLO IDLE,
// composed with juxtaposition, '|', '(...)' and '*' '+' '?'.
struct PatternMatch {
  std::size_t first = 0;  // episode indices, inclusive
  std::size_t last = 0;
  TimeInterval span;
};

// All non-overlapping leftmost-longest matches; zero-length matches are
// not reported. Throws E_PATTERN on a malformed expression.
std::vector<PatternMatch> match_pattern(const std::vector<Episode>& episodes,
                                        const std::string& pattern);

// Same matcher over a bare label sequence (index pairs, inclusive).
std::vector<std::pair<std::size_t, std::size_t>> match_labels(
    const std::vector<EpisodeLabel>& labels, const std::string& pattern);

// Named pattern presets. "composite" covers an integrated phase that is
// interrupted by non-integrated activity and may keep running in
// parallel with it, allowing solo/idle stretches in between.
std::optional<std::string> pattern_preset(const std::string& name);

inline constexpr const char* kCompositePreset = "composite";

}  // namespace cometlens
