#include "cometlens/segment.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cometlens {

const char* to_token(EpisodeLabel l) {
  switch (l) {
    case EpisodeLabel::Idle: return "IDLE";
    case EpisodeLabel::Solo: return "SOLO";
    case EpisodeLabel::Int: return "INT";
    case EpisodeLabel::NonInt: return "NON_INT";
  }
  return "IDLE";
}

std::optional<EpisodeLabel> parse_episode_label(const std::string& token) {
  if (token == "IDLE") return EpisodeLabel::Idle;
  if (token == "SOLO") return EpisodeLabel::Solo;
  if (token == "INT") return EpisodeLabel::Int;
  if (token == "NON_INT") return EpisodeLabel::NonInt;
  return std::nullopt;
}

const char* to_token(DisalignmentType t) {
  switch (t) {
    case DisalignmentType::ProblemShift: return "PROBLEM_SHIFT";
    case DisalignmentType::ProblemVsGroup: return "PROBLEM_VS_GROUP";
    case DisalignmentType::ProblemVsDomain: return "PROBLEM_VS_DOMAIN";
    case DisalignmentType::GroupVsDomain: return "GROUP_VS_DOMAIN";
    case DisalignmentType::WithinGroup: return "WITHIN_GROUP";
    case DisalignmentType::WithinDomain: return "WITHIN_DOMAIN";
    case DisalignmentType::Mixed: return "MIXED";
  }
  return "MIXED";
}

std::vector<ActorFocus> slice_focuses(const Corpus& corpus, const TimelineSlice& slice,
                                      const AnalysisConfig& config) {
  std::map<std::string, std::vector<ObjectRef>> objects;
  for (std::size_t idx : slice.active) {
    const AnnotationUnit& u = corpus.units[idx];
    objects[u.actor].push_back(u.object);
  }

  std::vector<ActorFocus> focuses;
  for (auto& [actor, refs] : objects) {
    ActorFocus focus;
    focus.actor = actor;
    std::set<std::string> keys;
    for (const auto& r : refs) keys.insert(match_key(r, config.granularity));
    focus.intra_actor_aligned = keys.size() <= 1;
    focus.focus_objects = std::move(refs);
    focuses.push_back(std::move(focus));
  }
  return focuses;
}

namespace {

std::vector<Block> slice_blocks(const Corpus& corpus, const TimelineSlice& slice,
                                const AnalysisConfig& config) {
  auto focuses = slice_focuses(corpus, slice, config);

  std::map<std::string, Block> aligned;  // key -> gathering block
  std::vector<Block> blocks;
  for (const auto& focus : focuses) {
    std::set<std::string> keys;
    for (const auto& r : focus.focus_objects) keys.insert(match_key(r, config.granularity));
    if (focus.intra_actor_aligned) {
      Block& block = aligned[*keys.begin()];
      block.focus = *keys.begin();
      block.actors.push_back(focus.actor);
    } else {
      // Conflicting own focuses: a singleton block, key joined for merging.
      Block block;
      std::string joined;
      for (const auto& k : keys) {
        if (!joined.empty()) joined += "|";
        joined += k;
      }
      block.focus = joined;
      block.intra_split = true;
      block.actors.push_back(focus.actor);
      blocks.push_back(std::move(block));
    }
  }
  for (auto& [key, block] : aligned) {
    std::sort(block.actors.begin(), block.actors.end());
    blocks.push_back(std::move(block));
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.focus != b.focus) return a.focus < b.focus;
    return a.actors.front() < b.actors.front();
  });
  return blocks;
}

EpisodeLabel label_for(const std::vector<Block>& blocks) {
  std::size_t actors = 0;
  for (const auto& b : blocks) actors += b.actors.size();
  if (actors == 0) return EpisodeLabel::Idle;
  if (actors == 1) return EpisodeLabel::Solo;
  return blocks.size() == 1 ? EpisodeLabel::Int : EpisodeLabel::NonInt;
}

bool same_shape(const Episode& a, const Episode& b) {
  return a.label == b.label && a.blocks == b.blocks;
}

void coalesce(std::vector<Episode>& episodes) {
  std::vector<Episode> merged;
  for (auto& e : episodes) {
    if (!merged.empty() && same_shape(merged.back(), e) &&
        merged.back().interval.end_ms == e.interval.start_ms) {
      merged.back().interval.end_ms = e.interval.end_ms;
    } else {
      merged.push_back(std::move(e));
    }
  }
  episodes = std::move(merged);
}

}  // namespace

std::optional<Space> block_space(const Block& block) {
  // Spaces are recoverable from the focus keys: SOL@/DAT prefixes and
  // space tokens map to problem/solution space, GOAL/TASK to group space,
  // OBJ/PROC to domain space. Split keys are examined part by part.
  std::set<Space> spaces;
  std::size_t pos = 0;
  const std::string& f = block.focus;
  while (pos <= f.size()) {
    auto bar = f.find('|', pos);
    std::string part = f.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
    std::string head = part.substr(0, part.find_first_of(":@"));
    if (head == "SOL" || head == "DAT" || head == "PROBLEM_SOLUTION") {
      spaces.insert(Space::ProblemSolution);
    } else if (head == "GOAL" || head == "TASK" || head == "GROUP") {
      spaces.insert(Space::Group);
    } else if (head == "OBJ" || head == "PROC" || head == "DOMAIN") {
      spaces.insert(Space::Domain);
    }
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  if (spaces.size() == 1) return *spaces.begin();
  return std::nullopt;
}

Segmentation segment(const Corpus& corpus, const AnalysisConfig& config) {
  Timeline timeline = build_timeline(corpus);

  Segmentation result;
  std::vector<Episode>& episodes = result.episodes;
  for (const auto& slice : timeline.slices) {
    Episode e;
    e.interval = slice.interval;
    e.blocks = slice_blocks(corpus, slice, config);
    e.label = label_for(e.blocks);
    episodes.push_back(std::move(e));
  }
  coalesce(episodes);

  if (config.min_episode_ms > 0) {
    std::vector<Episode> kept;
    TimeMs pending_head = -1;  // span start of dropped leading episodes
    for (auto& e : episodes) {
      if (e.interval.duration_ms() >= config.min_episode_ms) {
        if (kept.empty() && pending_head >= 0) e.interval.start_ms = pending_head;
        kept.push_back(std::move(e));
        continue;
      }
      result.warnings.push_back(
          {0, Code::W_MIN_EPISODE_MERGE,
           "episode [" + format_seconds(e.interval.start_ms) + ", " +
               format_seconds(e.interval.end_ms) + ") " + to_token(e.label) +
               " below minimum duration, merged into neighbour"});
      if (!kept.empty()) {
        kept.back().interval.end_ms = e.interval.end_ms;  // merge backward
      } else if (pending_head < 0) {
        // No predecessor exists yet; the next kept episode absorbs it.
        pending_head = e.interval.start_ms;
      }
    }
    if (kept.empty() && !episodes.empty()) {
      // Everything was below threshold; collapse to one episode shaped
      // like the first.
      TimeMs end = episodes.back().interval.end_ms;
      Episode merged = std::move(episodes.front());
      merged.interval.end_ms = end;
      kept.push_back(std::move(merged));
    }
    episodes = std::move(kept);
    coalesce(episodes);
  }

  return result;
}

DisalignmentType classify_disalignment(const Episode& episode) {
  if (episode.label != EpisodeLabel::NonInt)
    throw Error(Code::E_NOT_DISALIGNED, "episode is not non-integrated");

  std::set<Space> spaces;
  std::size_t ps_blocks = 0;
  for (const auto& block : episode.blocks) {
    auto space = block_space(block);
    if (!space) return DisalignmentType::Mixed;  // split block straddling spaces
    spaces.insert(*space);
    if (*space == Space::ProblemSolution) ++ps_blocks;
  }

  if (spaces.size() == 1) {
    switch (*spaces.begin()) {
      case Space::ProblemSolution:
        // The shift-of-problem case is defined for exactly two blocks; a
        // three-way split has no name in the taxonomy.
        return episode.blocks.size() == 2 ? DisalignmentType::ProblemShift
                                          : DisalignmentType::Mixed;
      case Space::Group: return DisalignmentType::WithinGroup;
      case Space::Domain: return DisalignmentType::WithinDomain;
    }
  }
  if (spaces.size() == 2) {
    if (spaces.count(Space::ProblemSolution) && spaces.count(Space::Group))
      return DisalignmentType::ProblemVsGroup;
    if (spaces.count(Space::ProblemSolution) && spaces.count(Space::Domain))
      return DisalignmentType::ProblemVsDomain;
    return DisalignmentType::GroupVsDomain;
  }
  return DisalignmentType::Mixed;
}

}  // namespace cometlens
