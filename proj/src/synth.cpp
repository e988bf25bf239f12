#include "cometlens/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "json.hpp"

namespace cometlens {

namespace {

using ordered_json = nlohmann::ordered_json;

// All randomness flows through here: mt19937_64 plus inverse-CDF
// sampling, so the byte stream depends on the seed alone.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform() { return (engine() >> 11) * 0x1.0p-53; }  // [0, 1)

  TimeMs exponential_ms(double mean_ms) {
    double draw = -mean_ms * std::log1p(-uniform());
    TimeMs ms = static_cast<TimeMs>(std::llround(draw));
    return std::max<TimeMs>(1, ms);
  }

  TimeMs jitter_ms(TimeMs bound) {
    return static_cast<TimeMs>(std::llround((uniform() * 2.0 - 1.0) * static_cast<double>(bound)));
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; }
};

struct PlannedUnit {
  std::string actor;
  TimeMs start = 0;
  TimeMs end = 0;
  std::size_t home_segment = 0;
};

const ObjectRef* schedule_at(const SynthSpec& spec, const std::string& actor, TimeMs t) {
  for (const auto& seg : spec.schedule) {
    if (seg.interval.start_ms <= t && t < seg.interval.end_ms) {
      auto it = seg.focus.find(actor);
      return it == seg.focus.end() ? nullptr : &it->second;
    }
  }
  return nullptr;
}

void coalesce_truth(std::vector<Episode>& episodes) {
  std::vector<Episode> merged;
  for (auto& e : episodes) {
    if (!merged.empty() && merged.back().label == e.label && merged.back().blocks == e.blocks &&
        merged.back().interval.end_ms == e.interval.start_ms) {
      merged.back().interval.end_ms = e.interval.end_ms;
    } else {
      merged.push_back(std::move(e));
    }
  }
  episodes = std::move(merged);
}

GroundTruth derive_truth(const SynthSpec& spec) {
  GroundTruth truth;
  for (const auto& seg : spec.schedule) {
    Episode e;
    e.interval = seg.interval;
    std::map<std::string, Block> by_key;
    for (const auto& [actor, object] : seg.focus) {
      std::string key = match_key(object, spec.granularity);
      Block& block = by_key[key];
      block.focus = key;
      block.actors.push_back(actor);
    }
    for (auto& [key, block] : by_key) {
      std::sort(block.actors.begin(), block.actors.end());
      e.blocks.push_back(std::move(block));
    }
    std::sort(e.blocks.begin(), e.blocks.end(), [](const Block& a, const Block& b) {
      if (a.focus != b.focus) return a.focus < b.focus;
      return a.actors.front() < b.actors.front();
    });
    std::size_t actors = seg.focus.size();
    e.label = actors == 0   ? EpisodeLabel::Idle
              : actors == 1 ? EpisodeLabel::Solo
              : e.blocks.size() == 1 ? EpisodeLabel::Int
                                     : EpisodeLabel::NonInt;
    truth.episodes.push_back(std::move(e));
  }
  coalesce_truth(truth.episodes);

  // Leading and trailing idle stretches leave no trace in the corpus.
  while (!truth.episodes.empty() && truth.episodes.front().label == EpisodeLabel::Idle)
    truth.episodes.erase(truth.episodes.begin());
  while (!truth.episodes.empty() && truth.episodes.back().label == EpisodeLabel::Idle)
    truth.episodes.pop_back();

  for (const auto& e : truth.episodes) {
    if (e.label != EpisodeLabel::NonInt) continue;
    std::size_t max_size = 0;
    for (const auto& b : e.blocks) max_size = std::max(max_size, b.actors.size());
    if (max_size < 2) continue;
    for (const auto& block : e.blocks) {
      if (block.actors.size() != max_size) continue;
      CoalitionEpisode c;
      c.interval = e.interval;
      c.coalition_block = block.actors;
      c.coalition_focus = block.focus;
      for (const auto& other : e.blocks) {
        if (&other != &block) c.opposed.push_back(other);
      }
      c.disalignment = classify_disalignment(e);
      truth.coalitions.push_back(std::move(c));
    }
  }
  return truth;
}

AnnotationUnit fill_unit(Rng& rng, const SynthSpec& spec, const PlannedUnit& plan,
                         std::string unit_id) {
  static const char* kExtActions[] = {"Movem_2d", "Position"};
  static const char* kDocs[] = {"C16", "P1", "C16+P1", "D3"};
  static const char* kTools[] = {"hand", "pencil", "pen", "ruler", "stylus"};
  static const char* kAreas[] = {"left", "center", "right"};
  static const char* kFillers[] = {"so here", "and then", "over there", "like this", "you see"};

  AnnotationUnit u;
  u.unit_id = std::move(unit_id);
  u.actor = plan.actor;
  u.interval = {plan.start, plan.end};

  TimeMs mid = plan.start + (plan.end - plan.start) / 2;
  const ObjectRef* at_mid = schedule_at(spec, plan.actor, mid);
  u.object = at_mid ? *at_mid : spec.schedule[plan.home_segment].focus.at(plan.actor);

  const bool gestural = rng.uniform() < spec.modality_mix;
  if (gestural) {
    u.modality = Modality::Gestural;
    double r = rng.uniform();
    if (r < 0.1) {
      u.g_action = GestureAction{GestureKind::Ext, kExtActions[rng.pick(2)]};
    } else {
      static const GestureKind kKnown[] = {GestureKind::Point,    GestureKind::Delim2d,
                                           GestureKind::Delim3d,  GestureKind::GraphTrac,
                                           GestureKind::TextTrac, GestureKind::Moving,
                                           GestureKind::Rotating, GestureKind::Overlaying};
      u.g_action = GestureAction{kKnown[rng.pick(8)], ""};
    }
    GestureAttrs attrs;
    attrs.obj1 = kDocs[rng.pick(4)];
    if (rng.uniform() < 0.3) attrs.obj2 = kDocs[rng.pick(4)];
    if (rng.uniform() < 0.8) attrs.tool = parse_tool(kTools[rng.pick(5)]);
    if (rng.uniform() < 0.25) attrs.area = kAreas[rng.pick(3)];
    u.attrs = std::move(attrs);
  } else {
    u.modality = Modality::Verbal;
    double r = rng.uniform();
    if (r < 0.55) {
      u.v_action = VerbalAction{VerbalKind::Gen, std::nullopt};
    } else if (r < 0.80) {
      static const Polarity kPol[] = {Polarity::Pos, Polarity::Neg, Polarity::Neutral};
      u.v_action = VerbalAction{VerbalKind::Eval, kPol[rng.pick(3)]};
    } else if (r < 0.92) {
      u.v_action = VerbalAction{VerbalKind::Info, std::nullopt};
    } else {
      u.v_action = VerbalAction{VerbalKind::Interp, std::nullopt};
    }
    u.modulation = rng.uniform() < 0.05 ? Modulation::Request : Modulation::Assert;
    u.transcription = std::string(kFillers[rng.pick(5)]);
    if (rng.uniform() < 0.12) u.transcription += " \"x\" \\ tab\tend";
  }
  return u;
}

}  // namespace

void SynthSpec::validate() const {
  if (actors.empty()) throw Error(Code::E_SPEC, "no actors");
  std::set<std::string> seen;
  for (const auto& a : actors) {
    if (a.empty()) throw Error(Code::E_SPEC, "empty actor token");
    if (!seen.insert(a).second) throw Error(Code::E_SPEC, "duplicate actor " + a);
  }
  if (span_ms < 0) throw Error(Code::E_SPEC, "negative span");
  if (unit_rate < 0) throw Error(Code::E_SPEC, "negative unit rate");
  if (modality_mix < 0.0 || modality_mix > 1.0)
    throw Error(Code::E_SPEC, "modality_mix outside [0, 1]");
  if (jitter_ms < 0) throw Error(Code::E_SPEC, "negative jitter");

  if (schedule.empty()) {
    if (span_ms != 0) throw Error(Code::E_SPEC, "schedule does not tile the span");
    return;
  }
  TimeMs cursor = 0;
  for (const auto& seg : schedule) {
    if (seg.interval.start_ms != cursor)
      throw Error(Code::E_SPEC, "schedule does not tile the span");
    if (seg.interval.duration_ms() <= 0)
      throw Error(Code::E_SPEC, "schedule segment without positive duration");
    cursor = seg.interval.end_ms;
    for (const auto& [actor, object] : seg.focus) {
      if (!seen.count(actor)) throw Error(Code::E_SPEC, "schedule assigns unknown actor " + actor);
      if (object.category == Category::Sol &&
          (object.problem_id.empty() || object.solution_id.empty()))
        throw Error(Code::E_SPEC, "SOL assignment without problem/solution ids");
    }
  }
  if (cursor != span_ms) throw Error(Code::E_SPEC, "schedule does not tile the span");
}

std::pair<Corpus, GroundTruth> generate(const SynthSpec& spec) {
  spec.validate();

  std::map<std::string, std::string> meta;
  meta["generator"] = "cometlens-synth";
  meta["seed"] = std::to_string(spec.seed);

  if (spec.unit_rate == 0.0) {
    return {Corpus::build({}, spec.actors, std::move(meta)), GroundTruth{}};
  }

  Rng rng(spec.seed);
  const double mean_ms = 60000.0 / spec.unit_rate;

  // Cut points per actor: renewal cuts within each scheduled stretch plus
  // mandatory cuts at focus changes; consecutive units share a cut, so an
  // actor's activity stays gap-free inside a stretch even under jitter.
  std::vector<PlannedUnit> planned;
  for (const auto& actor : spec.actors) {
    std::size_t i = 0;
    while (i < spec.schedule.size()) {
      if (!spec.schedule[i].focus.count(actor)) {
        ++i;
        continue;
      }
      std::size_t run_end = i;
      while (run_end < spec.schedule.size() && spec.schedule[run_end].focus.count(actor))
        ++run_end;

      std::vector<TimeMs> cuts{spec.schedule[i].interval.start_ms};
      std::vector<std::size_t> homes;
      for (std::size_t s = i; s < run_end; ++s) {
        const TimeMs seg_end = spec.schedule[s].interval.end_ms;
        while (true) {
          TimeMs next = cuts.back() + rng.exponential_ms(mean_ms);
          if (next >= seg_end) break;
          cuts.push_back(next);
          homes.push_back(s);
        }
        cuts.push_back(seg_end);
        homes.push_back(s);
      }

      if (spec.jitter_ms > 0) {
        for (auto& c : cuts) c = std::max<TimeMs>(0, c + rng.jitter_ms(spec.jitter_ms));
        for (std::size_t k = 1; k < cuts.size(); ++k)
          cuts[k] = std::max(cuts[k], cuts[k - 1] + 1);
      }

      for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        planned.push_back({actor, cuts[k], cuts[k + 1], homes[k]});

      i = run_end;
    }
  }

  int width = 4;
  for (std::size_t n = planned.size(); n >= 10000; n /= 10) ++width;

  std::vector<AnnotationUnit> units;
  units.reserve(planned.size());
  for (std::size_t k = 0; k < planned.size(); ++k) {
    std::string id = std::to_string(k + 1);
    id.insert(0, width - std::min<std::size_t>(width, id.size()), '0');
    units.push_back(fill_unit(rng, spec, planned[k], "u" + id));
  }

  Corpus corpus = Corpus::build(std::move(units), spec.actors, std::move(meta));
  return {std::move(corpus), derive_truth(spec)};
}

namespace {

TimeMs json_time(const ordered_json& j, const char* what) {
  if (j.is_string()) {
    auto t = parse_time(j.get<std::string>());
    if (!t) throw Error(Code::E_SPEC, std::string("unparseable time in ") + what);
    return *t;
  }
  if (j.is_number()) {
    double d = j.get<double>();
    if (d < 0) throw Error(Code::E_SPEC, std::string("negative time in ") + what);
    return static_cast<TimeMs>(std::llround(d * 1000.0));
  }
  throw Error(Code::E_SPEC, std::string("missing time in ") + what);
}

}  // namespace

SynthSpec synth_spec_from_json(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw Error(Code::E_SPEC, "spec is not a valid document");

  SynthSpec spec;
  if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("actors")) {
    for (const auto& a : doc["actors"]) spec.actors.push_back(a.get<std::string>());
  }
  if (doc.contains("span")) spec.span_ms = json_time(doc["span"], "span");
  if (doc.contains("unit_rate")) spec.unit_rate = doc["unit_rate"].get<double>();
  if (doc.contains("modality_mix")) spec.modality_mix = doc["modality_mix"].get<double>();
  if (doc.contains("jitter")) spec.jitter_ms = json_time(doc["jitter"], "jitter");
  if (doc.contains("granularity")) {
    auto g = parse_granularity(doc["granularity"].get<std::string>());
    if (!g) throw Error(Code::E_SPEC, "unknown granularity");
    spec.granularity = *g;
  }
  if (doc.contains("schedule")) {
    if (!doc["schedule"].is_array()) throw Error(Code::E_SPEC, "schedule must be an array");
    for (const auto& js : doc["schedule"]) {
      ScheduleSegment seg;
      seg.interval = {json_time(js.contains("t_start") ? js["t_start"] : ordered_json(), "segment"),
                      json_time(js.contains("t_end") ? js["t_end"] : ordered_json(), "segment")};
      if (js.contains("focus")) {
        for (auto it = js["focus"].begin(); it != js["focus"].end(); ++it) {
          auto object = parse_object(it.value().get<std::string>());
          if (!object)
            throw Error(Code::E_SPEC, "malformed object '" + it.value().get<std::string>() + "'");
          seg.focus[it.key()] = *object;
        }
      }
      spec.schedule.push_back(std::move(seg));
    }
  }
  spec.validate();
  return spec;
}

std::string synth_spec_to_json(const SynthSpec& spec) {
  ordered_json doc;
  doc["seed"] = spec.seed;
  doc["actors"] = spec.actors;
  doc["span"] = format_seconds(spec.span_ms);
  doc["unit_rate"] = spec.unit_rate;
  doc["modality_mix"] = spec.modality_mix;
  doc["jitter"] = format_seconds(spec.jitter_ms);
  doc["granularity"] = to_token(spec.granularity);
  doc["schedule"] = ordered_json::array();
  for (const auto& seg : spec.schedule) {
    ordered_json js;
    js["t_start"] = format_seconds(seg.interval.start_ms);
    js["t_end"] = format_seconds(seg.interval.end_ms);
    js["focus"] = ordered_json::object();
    for (const auto& [actor, object] : seg.focus) js["focus"][actor] = format_object(object);
    doc["schedule"].push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

namespace {

ordered_json blocks_json(const std::vector<Block>& blocks) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : blocks) {
    ordered_json jb;
    jb["actors"] = b.actors;
    jb["focus"] = b.focus;
    if (b.intra_split) jb["intra_split"] = true;
    arr.push_back(std::move(jb));
  }
  return arr;
}

}  // namespace

std::string ground_truth_to_json(const GroundTruth& truth) {
  ordered_json doc;
  doc["episodes"] = ordered_json::array();
  for (const auto& e : truth.episodes) {
    ordered_json je;
    je["t_start"] = format_seconds(e.interval.start_ms);
    je["t_end"] = format_seconds(e.interval.end_ms);
    je["label"] = to_token(e.label);
    je["blocks"] = blocks_json(e.blocks);
    doc["episodes"].push_back(std::move(je));
  }
  doc["coalitions"] = ordered_json::array();
  for (const auto& c : truth.coalitions) {
    ordered_json jc;
    jc["t_start"] = format_seconds(c.interval.start_ms);
    jc["t_end"] = format_seconds(c.interval.end_ms);
    jc["coalition"] = c.coalition_block;
    jc["focus"] = c.coalition_focus;
    jc["opposed"] = blocks_json(c.opposed);
    jc["disalignment"] = to_token(c.disalignment);
    doc["coalitions"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

}  // namespace cometlens
