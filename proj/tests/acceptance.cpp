// Acceptance suite: one pass/fail line per published criterion, each
// checked at its stated tolerance. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace cometlens;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

AnalysisResult analyze_fixture(const std::string& name, AnalysisConfig config = {}) {
  Corpus corpus = testutil::load_fixture(name);
  ParseReport parse;
  parse.unit_count = corpus.units.size();
  return run_analysis(std::move(corpus), std::move(parse), config);
}

std::string run_cli_capture(const std::string& args, int* exit_code) {
  static int counter = 0;
  std::string out_path = "acceptance_out_" + std::to_string(counter++) + ".tmp";
  std::string command = std::string(COMETLENS_CLI_PATH) + " " + args + " > " + out_path +
                        " 2>/dev/null";
  int status = std::system(command.c_str());
  *exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::remove(out_path.c_str());
  return bytes;
}

// --- criterion 1: Example 1 ------------------------------------------------

void criterion_1() {
  auto start = Clock::now();
  std::ostringstream why;
  bool pass = true;

  AnalysisResult r = analyze_fixture("example1.tsv");
  if (r.pairs.size() != 1) {
    pass = false;
    why << "expected 1 pair, got " << r.pairs.size() << "; ";
  } else {
    const ClassifiedPair& p = r.pairs[0];
    const AnnotationUnit& a = r.corpus.unit(p.pair.unit_a);
    const AnnotationUnit& b = r.corpus.unit(p.pair.unit_b);
    if (a.actor != "L" || b.actor != "L") pass = false;
    if (a.modality == b.modality) pass = false;
    if (p.verdict != Verdict::Integrated) pass = false;
    if (p.scope != VerdictScope::Individual) pass = false;
    if (p.relation != RelationKind::Redundant) pass = false;
    if (!pass) why << "pair misclassified; ";
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    pass = false;
    why << "runtime " << elapsed << "s; ";
  }
  why << "1 cross-modality pair for L, INTEGRATED/INDIVIDUAL, REDUNDANT, " << elapsed << "s";
  report(1, "example 1 integrated individual multimodality", pass, why.str());
}

// --- criterion 2: Example 2 ------------------------------------------------

void criterion_2() {
  auto start = Clock::now();
  std::ostringstream why;
  bool pass = true;

  AnalysisResult r = analyze_fixture("example2.tsv");
  int int_episodes = 0;
  for (const auto& e : r.episodes) {
    if (e.label == EpisodeLabel::Int) {
      ++int_episodes;
      if (e.blocks.size() != 1 ||
          e.blocks[0].actors != std::vector<std::string>{"C", "L"}) {
        pass = false;
        why << "INT episode has wrong block; ";
      }
    }
  }
  if (int_episodes != 1) {
    pass = false;
    why << "expected 1 INT episode, got " << int_episodes << "; ";
  }

  auto relation_of = [&](const std::string& a, const std::string& b, RelationKind expected) {
    for (const auto& p : r.pairs) {
      if (p.pair.unit_a == a && p.pair.unit_b == b) {
        if (p.relation != expected) {
          pass = false;
          why << a << "x" << b << " is " << to_token(p.relation) << " not "
              << to_token(expected) << "; ";
        }
        return;
      }
    }
    pass = false;
    why << "pair " << a << "x" << b << " missing; ";
  };
  relation_of("u1", "u2", RelationKind::Redundant);      // sketch + underlining gesture
  relation_of("u1", "u3", RelationKind::Complementary);  // sketch + verbal detailing

  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) pass = false;
  why << "INT block {L,C}, lines 1-2 REDUNDANT, 1-3 COMPLEMENTARY, " << elapsed << "s";
  report(2, "example 2 co-elaboration episode and relations", pass, why.str());
}

// --- criterion 3: Example 3 ------------------------------------------------

void criterion_3() {
  auto start = Clock::now();
  std::ostringstream why;
  bool pass = true;

  AnalysisResult r = analyze_fixture("example3.tsv");
  auto matches = match_pattern(r.episodes, *pattern_preset(kCompositePreset));
  if (matches.size() != 1) {
    pass = false;
    why << "composite matches " << matches.size() << " times; ";
  }

  if (r.coalitions.size() != 1) {
    pass = false;
    why << "expected 1 coalition, got " << r.coalitions.size() << "; ";
  } else {
    const CoalitionEpisode& c = r.coalitions[0];
    if (c.coalition_block != std::vector<std::string>{"C", "M"} ||
        c.coalition_focus != "SOL@PB1" || c.opposed.size() != 1 ||
        c.opposed[0].actors != std::vector<std::string>{"L"} ||
        c.opposed[0].focus != "SOL@PB2" ||
        c.disalignment != DisalignmentType::ProblemShift) {
      pass = false;
      why << "coalition shape wrong; ";
    }
  }

  AnalysisConfig space_config;
  space_config.granularity = Granularity::Space;
  AnalysisResult rs = analyze_fixture("example3.tsv", space_config);
  if (!rs.coalitions.empty()) {
    pass = false;
    why << "coalition survives SPACE granularity; ";
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) pass = false;
  why << "composite matched once, coalition {M,C} vs {L} PROBLEM_SHIFT, gone at SPACE, "
      << elapsed << "s";
  report(3, "example 3 composite structure and coalition", pass, why.str());
}

// --- criterion 4: sweep vs oracle -------------------------------------------

void criterion_4() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream why;

  std::size_t max_units = 0;
  int mismatches = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    SynthSpec spec = testutil::random_spec(7000 + trial);
    spec.unit_rate = 8.0 + static_cast<double>(trial % 5) * 8.0;  // up to ~200 units
    Corpus corpus = generate(spec).first;
    max_units = std::max(max_units, corpus.units.size());
    AnalysisConfig config;
    config.gap_tolerance_ms = (trial % 4) * 500;
    if (find_parallel_pairs(corpus, config) != testutil::brute_force_pairs(corpus, config))
      ++mismatches;
  }
  if (mismatches != 0) {
    pass = false;
    why << mismatches << " mismatching corpora; ";
  }
  if (max_units > 200) {
    pass = false;
    why << "corpus over 200 units (" << max_units << "); ";
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    pass = false;
    why << "runtime over budget; ";
  }
  why << "100 corpora (max " << max_units << " units) sweep == brute force, " << elapsed << "s";
  report(4, "sweep equals all-pairs oracle", pass, why.str());
}

// --- criterion 5: synthetic recovery ----------------------------------------

SynthSpec recovery_spec(std::uint64_t seed, TimeMs jitter_ms) {
  SynthSpec spec;
  spec.seed = seed;
  spec.actors = {"A", "B", "C"};
  spec.span_ms = 120000;
  ScheduleSegment s1;
  s1.interval = {0, 30000};
  s1.focus = {{"A", *parse_object("SOL:x@PB1")},
              {"B", *parse_object("SOL:x@PB1")},
              {"C", *parse_object("SOL:x@PB1")}};
  ScheduleSegment s2;
  s2.interval = {30000, 90000};
  s2.focus = {{"A", *parse_object("SOL:x@PB1")},
              {"B", *parse_object("SOL:y@PB1")},
              {"C", *parse_object("SOL:z@PB2")}};
  ScheduleSegment s3;
  s3.interval = {90000, 120000};
  s3.focus = {{"A", *parse_object("TASK:t1")},
              {"B", *parse_object("TASK:t1")},
              {"C", *parse_object("TASK:t1")}};
  spec.schedule = {s1, s2, s3};
  spec.unit_rate = 12;
  spec.modality_mix = 0.3;
  spec.jitter_ms = jitter_ms;
  return spec;
}

void criterion_5() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream why;

  // Zero jitter: label sequence, block membership and boundaries must be
  // recovered exactly (tolerance one time-resolution step).
  int exact_failures = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    auto [corpus, truth] = generate(recovery_spec(9000 + trial, 0));
    Segmentation seg = segment(corpus, {});
    bool ok = seg.episodes.size() == truth.episodes.size();
    if (ok) {
      for (std::size_t i = 0; i < seg.episodes.size(); ++i) {
        const Episode& got = seg.episodes[i];
        const Episode& want = truth.episodes[i];
        if (got.label != want.label || got.blocks != want.blocks) ok = false;
        if (std::llabs(got.interval.start_ms - want.interval.start_ms) > 1) ok = false;
        if (std::llabs(got.interval.end_ms - want.interval.end_ms) > 1) ok = false;
      }
    }
    auto coalitions = detect_coalitions(seg.episodes, corpus);
    if (coalitions.size() != truth.coalitions.size()) ok = false;
    for (std::size_t i = 0; ok && i < coalitions.size(); ++i) {
      if (coalitions[i].coalition_block != truth.coalitions[i].coalition_block) ok = false;
      if (!(coalitions[i].interval == truth.coalitions[i].interval)) ok = false;
    }
    if (!ok) ++exact_failures;
  }
  if (exact_failures != 0) {
    pass = false;
    why << exact_failures << "/50 zero-jitter trials inexact; ";
  }

  // Jitter up to the gap tolerance: the planted coalition must come back
  // with IoU >= 0.9 in at least 95% of 200 seeded trials.
  int recovered = 0;
  const TimeMs planted_start = 30000;
  const TimeMs planted_end = 90000;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    TimeMs jitter = 200 + static_cast<TimeMs>(trial % 5) * 200;  // 0.2 .. 1.0 s
    auto [corpus, truth] = generate(recovery_spec(100000 + trial, jitter));
    Segmentation seg = segment(corpus, {});
    double best = 0.0;
    for (const auto& c : detect_coalitions(seg.episodes, corpus)) {
      if (c.coalition_block != std::vector<std::string>{"A", "B"}) continue;
      TimeMs inter = std::min(c.interval.end_ms, planted_end) -
                     std::max(c.interval.start_ms, planted_start);
      TimeMs uni = std::max(c.interval.end_ms, planted_end) -
                   std::min(c.interval.start_ms, planted_start);
      if (inter > 0 && uni > 0)
        best = std::max(best, static_cast<double>(inter) / static_cast<double>(uni));
    }
    if (best >= 0.9) ++recovered;
  }
  if (recovered < 190) {
    pass = false;
    why << "only " << recovered << "/200 jittered recoveries; ";
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 30.0) {
    pass = false;
    why << "runtime over budget; ";
  }
  why << "50/50 exact at zero jitter, " << recovered << "/200 jittered IoU>=0.9, " << elapsed
      << "s";
  report(5, "synthetic ground-truth recovery", pass, why.str());
}

// --- criterion 6: invariant suite -------------------------------------------

void criterion_6() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream why;

  // Episode tiling, exact in integer milliseconds.
  int tiling_failures = 0;
  for (std::uint64_t seed = 20000; seed < 20030; ++seed) {
    Corpus corpus = testutil::random_corpus(seed);
    if (corpus.units.empty()) continue;
    Segmentation seg = segment(corpus, {});
    TimeMs total = 0;
    for (const auto& e : seg.episodes) total += e.interval.duration_ms();
    if (total != corpus.span().duration_ms()) ++tiling_failures;
    for (std::size_t i = 0; i + 1 < seg.episodes.size(); ++i) {
      if (seg.episodes[i].interval.end_ms != seg.episodes[i + 1].interval.start_ms)
        ++tiling_failures;
    }
  }
  if (tiling_failures != 0) {
    pass = false;
    why << tiling_failures << " tiling violations; ";
  }

  // Partition refinement across granularities, slice by slice.
  int refinement_failures = 0;
  for (std::uint64_t seed = 21000; seed < 21010; ++seed) {
    Corpus corpus = testutil::random_corpus(seed);
    if (corpus.units.empty()) continue;
    Timeline timeline = build_timeline(corpus);
    for (const auto& slice : timeline.slices) {
      std::map<Granularity, std::map<std::string, std::string>> keys;
      for (Granularity g : {Granularity::Instance, Granularity::Problem, Granularity::Space}) {
        AnalysisConfig cfg;
        cfg.granularity = g;
        for (const auto& f : slice_focuses(corpus, slice, cfg)) {
          std::set<std::string> ks;
          for (const auto& o : f.focus_objects) ks.insert(match_key(o, g));
          std::string joined;
          for (const auto& k : ks) joined += k + "|";
          keys[g][f.actor] = joined;
        }
      }
      auto refines = [&](Granularity fine, Granularity coarse) {
        for (const auto& [a, ka] : keys[fine]) {
          for (const auto& [b, kb] : keys[fine]) {
            if (ka == kb && keys[coarse][a] != keys[coarse][b]) ++refinement_failures;
          }
        }
      };
      refines(Granularity::Instance, Granularity::Problem);
      refines(Granularity::Problem, Granularity::Space);
    }
  }
  if (refinement_failures != 0) {
    pass = false;
    why << refinement_failures << " refinement violations; ";
  }

  // objects_match equivalence: exhaustive reflexivity/symmetry over a
  // pool, 10^4 sampled triples for transitivity, zero violations.
  std::vector<ObjectRef> pool;
  for (const char* token :
       {"SOL:a@PB1", "SOL:b@PB1", "SOL:a@PB2", "SOL:c@PB3", "DAT", "DAT:d1", "DAT:d2",
        "DAT@PB1", "DAT@PB2", "DAT@PB1:d1", "OBJ", "OBJ:o1", "OBJ:o2", "PROC", "PROC:p1",
        "GOAL", "GOAL:g1", "TASK", "TASK:t1", "TASK:t2"}) {
    pool.push_back(*parse_object(token));
  }
  int equivalence_failures = 0;
  std::mt19937_64 rng(424242);
  for (Granularity level : {Granularity::Instance, Granularity::Problem, Granularity::Space}) {
    for (const auto& a : pool) {
      if (!objects_match(a, a, level)) ++equivalence_failures;
      for (const auto& b : pool) {
        if (objects_match(a, b, level) != objects_match(b, a, level)) ++equivalence_failures;
        if (objects_match(a, b, Granularity::Instance) && !objects_match(a, b, level))
          ++equivalence_failures;  // coarsening monotonicity
      }
    }
    for (int i = 0; i < 10000; ++i) {
      const auto& a = pool[rng() % pool.size()];
      const auto& b = pool[rng() % pool.size()];
      const auto& c = pool[rng() % pool.size()];
      if (objects_match(a, b, level) && objects_match(b, c, level) &&
          !objects_match(a, c, level)) {
        ++equivalence_failures;
      }
    }
  }
  if (equivalence_failures != 0) {
    pass = false;
    why << equivalence_failures << " equivalence violations; ";
  }

  // TSV round-trip equality on 500 randomized corpora.
  int roundtrip_failures = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Corpus corpus = testutil::random_corpus(seed);
    auto reparsed = parse_corpus(write_corpus(corpus, Format::Tsv), Format::Tsv);
    if (!reparsed.report.ok() || !(*reparsed.corpus == corpus)) ++roundtrip_failures;
  }
  if (roundtrip_failures != 0) {
    pass = false;
    why << roundtrip_failures << " round-trip failures; ";
  }

  double elapsed = seconds_since(start);
  why << "tiling, refinement, equivalence (10^4 triples), 500 round-trips, " << elapsed << "s";
  report(6, "invariant suite", pass, why.str());
}

// --- criterion 7: determinism -----------------------------------------------

void criterion_7() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream why;

  int diff = 0;
  for (const char* name : {"example1.tsv", "example2.tsv", "example3.tsv"}) {
    AnalysisResult r1 = analyze_fixture(name);
    AnalysisResult r2 = analyze_fixture(name);
    if (report_to_json(r1) != report_to_json(r2)) ++diff;

    int code1 = 0;
    int code2 = 0;
    std::string cli1 = run_cli_capture("analyze " + testutil::fixture_path(name), &code1);
    std::string cli2 = run_cli_capture("analyze " + testutil::fixture_path(name), &code2);
    if (code1 != 0 || code2 != 0 || cli1.empty() || cli1 != cli2) ++diff;
  }
  for (std::uint64_t seed = 30000; seed < 30020; ++seed) {
    Corpus corpus = testutil::random_corpus(seed);
    ParseReport parse;
    parse.unit_count = corpus.units.size();
    std::string one = report_to_json(run_analysis(corpus, parse, {}));
    std::string two = report_to_json(run_analysis(corpus, parse, {}));
    if (one != two) ++diff;
  }
  if (diff != 0) {
    pass = false;
    why << diff << " nondeterministic outputs; ";
  }

  double elapsed = seconds_since(start);
  why << "3 fixtures (library + CLI) and 20 random corpora byte-identical, " << elapsed << "s";
  report(7, "analyze output determinism", pass, why.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (g_failures == 0) {
    std::printf("acceptance: all 7 criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
