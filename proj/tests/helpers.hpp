#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cometlens/report.hpp"
#include "cometlens/synth.hpp"

namespace testutil {

using namespace cometlens;

inline std::string fixture_path(const std::string& name) {
  return std::string(COMETLENS_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Corpus load_fixture(const std::string& name) {
  Format format = name.find(".json") != std::string::npos ? Format::Doc : Format::Tsv;
  ParseResult result = parse_corpus(read_file(fixture_path(name)), format);
  if (!result.report.ok()) {
    std::string why = "fixture " + name + " failed to parse:";
    for (const auto& e : result.report.errors) why += " " + std::to_string(e.line) + ":" + e.message;
    throw std::runtime_error(why);
  }
  return *result.corpus;
}

// All-pairs oracle for parallel-pair detection, kept independent of the
// sweep implementation.
inline std::vector<ParallelPair> brute_force_pairs(const Corpus& corpus,
                                                   const AnalysisConfig& config) {
  std::vector<ParallelPair> pairs;
  const auto& units = corpus.units;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      const AnnotationUnit& a = units[i].unit_id < units[j].unit_id ? units[i] : units[j];
      const AnnotationUnit& b = units[i].unit_id < units[j].unit_id ? units[j] : units[i];
      const TimeInterval& ia = a.interval;
      const TimeInterval& ib = b.interval;
      TimeMs lo = std::max(ia.start_ms, ib.start_ms);
      TimeMs hi = std::min(ia.end_ms, ib.end_ms);
      ParallelPair p;
      p.unit_a = a.unit_id;
      p.unit_b = b.unit_id;
      bool a_point_inside = ia.is_point() && ib.start_ms <= ia.start_ms && ia.start_ms <= ib.end_ms;
      bool b_point_inside = ib.is_point() && ia.start_ms <= ib.start_ms && ib.start_ms <= ia.end_ms;
      if (ia == ib) {
        p.relation = PairRelation::Simultaneous;
        p.shared = ia;
      } else if (lo < hi || a_point_inside || b_point_inside) {
        p.relation = PairRelation::Overlap;
        p.shared = {lo, std::max(lo, hi)};
      } else if (lo - hi <= config.gap_tolerance_ms) {
        p.relation = PairRelation::Near;
        p.shared = {hi, lo};
        if (!config.include_near) continue;
      } else {
        continue;
      }
      pairs.push_back(p);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const ParallelPair& x, const ParallelPair& y) {
    if (x.unit_a != y.unit_a) return x.unit_a < y.unit_a;
    return x.unit_b < y.unit_b;
  });
  return pairs;
}

// Randomized generation recipe driving the property tests. Deterministic
// per seed; spans a few actors, segments and all object categories.
inline SynthSpec random_spec(std::uint64_t seed, TimeMs jitter_ms = 0) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53; };
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; };

  static const char* kActors[] = {"A", "B", "C", "D"};
  static const char* kObjects[] = {"SOL:x@PB1", "SOL:y@PB1", "SOL:z@PB2", "DAT@PB1",
                                   "DAT:d1",    "OBJ:o1",    "PROC",      "GOAL:g1",
                                   "TASK:t1"};

  SynthSpec spec;
  spec.seed = rng();
  std::size_t actor_count = 2 + pick(3);
  for (std::size_t i = 0; i < actor_count; ++i) spec.actors.push_back(kActors[i]);

  spec.span_ms = 20000 + static_cast<TimeMs>(pick(300)) * 100;  // 20..50 s
  std::size_t segments = 2 + pick(4);
  std::vector<TimeMs> cuts{0, spec.span_ms};
  for (std::size_t i = 1; i < segments; ++i)
    cuts.push_back(1000 + static_cast<TimeMs>(uniform() * (spec.span_ms - 2000)));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    ScheduleSegment seg;
    seg.interval = {cuts[i], cuts[i + 1]};
    for (const auto& actor : spec.actors) {
      if (uniform() < 0.75) seg.focus[actor] = *parse_object(kObjects[pick(9)]);
    }
    spec.schedule.push_back(std::move(seg));
  }

  spec.unit_rate = 8.0 + uniform() * 17.0;
  spec.modality_mix = uniform() * 0.5;
  spec.jitter_ms = jitter_ms;
  return spec;
}

inline Corpus random_corpus(std::uint64_t seed) { return generate(random_spec(seed)).first; }

}  // namespace testutil
