#include "cometlens/coalition.hpp"

#include <algorithm>

namespace cometlens {

namespace {

// Units overlapping the episode with positive duration, bucketed per
// actor and modality. Point units occupy no measurable time and are
// skipped, consistently with slice membership.
std::map<std::string, std::map<Modality, int>> episode_profile(const Episode& episode,
                                                               const Corpus& corpus) {
  std::map<std::string, std::map<Modality, int>> profile;
  for (const auto& u : corpus.units) {
    TimeMs lo = std::max(u.interval.start_ms, episode.interval.start_ms);
    TimeMs hi = std::min(u.interval.end_ms, episode.interval.end_ms);
    if (lo < hi) profile[u.actor][u.modality] += 1;
  }
  return profile;
}

}  // namespace

std::vector<CoalitionEpisode> detect_coalitions(const std::vector<Episode>& episodes,
                                                const Corpus& corpus) {
  std::vector<CoalitionEpisode> coalitions;
  for (const auto& episode : episodes) {
    if (episode.label != EpisodeLabel::NonInt) continue;
    std::size_t max_size = 0;
    for (const auto& b : episode.blocks) max_size = std::max(max_size, b.actors.size());
    if (max_size < 2) continue;

    DisalignmentType type = classify_disalignment(episode);
    auto profile = episode_profile(episode, corpus);

    for (const auto& block : episode.blocks) {
      if (block.actors.size() != max_size) continue;
      CoalitionEpisode c;
      c.interval = episode.interval;
      c.coalition_block = block.actors;
      c.coalition_focus = block.focus;
      for (const auto& other : episode.blocks) {
        if (&other != &block) c.opposed.push_back(other);
      }
      c.disalignment = type;
      c.modality_profile = profile;
      coalitions.push_back(std::move(c));
    }
  }
  return coalitions;  // episode order is start order already
}

std::string membership_key(const CoalitionEpisode& coalition) {
  std::string key;
  for (const auto& actor : coalition.coalition_block) {
    if (!key.empty()) key += "+";
    key += actor;
  }
  return key;
}

std::string profile_key(const CoalitionEpisode& coalition) {
  std::string key;
  for (const auto& actor : coalition.coalition_block) {
    if (!key.empty()) key += ",";
    int v = 0;
    int g = 0;
    auto it = coalition.modality_profile.find(actor);
    if (it != coalition.modality_profile.end()) {
      auto vi = it->second.find(Modality::Verbal);
      if (vi != it->second.end()) v = vi->second;
      auto gi = it->second.find(Modality::Gestural);
      if (gi != it->second.end()) g = gi->second;
    }
    key += actor + "=V" + std::to_string(v) + "G" + std::to_string(g);
  }
  return key;
}

CoalitionSummary coalition_summary(const std::vector<CoalitionEpisode>& coalitions,
                                   const Corpus& corpus) {
  (void)corpus;
  CoalitionSummary summary;
  for (const auto& c : coalitions) {
    summary.count += 1;
    summary.total_ms += c.interval.duration_ms();
    auto bump = [&](std::map<std::string, CoalitionAgg>& dest, const std::string& key) {
      auto& agg = dest[key];
      agg.count += 1;
      agg.total_ms += c.interval.duration_ms();
    };
    bump(summary.by_type, to_token(c.disalignment));
    bump(summary.by_membership, membership_key(c));
    bump(summary.by_profile, profile_key(c));
  }
  return summary;
}

}  // namespace cometlens
