#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "cometlens/segment.hpp"
#include "helpers.hpp"

using namespace cometlens;

namespace {

TimeMs sec(double s) { return static_cast<TimeMs>(s * 1000.0 + 0.5); }

struct Expect {
  double start;
  double end;
  EpisodeLabel label;
  std::vector<std::vector<std::string>> blocks;
};

void check_episodes(const std::vector<Episode>& episodes, const std::vector<Expect>& expected) {
  REQUIRE(episodes.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    INFO("episode ", i);
    CHECK(episodes[i].interval.start_ms == sec(expected[i].start));
    CHECK(episodes[i].interval.end_ms == sec(expected[i].end));
    CHECK(episodes[i].label == expected[i].label);
    REQUIRE(episodes[i].blocks.size() == expected[i].blocks.size());
    for (std::size_t b = 0; b < expected[i].blocks.size(); ++b) {
      CHECK(episodes[i].blocks[b].actors == expected[i].blocks[b]);
    }
  }
}

std::string corpus_text(const std::string& rows) {
  return std::string(kTsvHeader) + "\n" + rows;
}

Corpus parse_ok(const std::string& text) {
  auto result = parse_corpus(text, Format::Tsv);
  REQUIRE(result.report.ok());
  return *result.corpus;
}

}  // namespace

TEST_CASE("example 1 collapses to a single solo episode") {
  Corpus c = testutil::load_fixture("example1.tsv");
  Segmentation seg = segment(c, {});
  REQUIRE(seg.episodes.size() == 1);
  CHECK(seg.episodes[0].label == EpisodeLabel::Solo);
  CHECK(seg.episodes[0].interval == TimeInterval{43707000, 43708000});
  REQUIRE(seg.episodes[0].blocks.size() == 1);
  CHECK(seg.episodes[0].blocks[0].actors == std::vector<std::string>{"L"});
  CHECK(seg.episodes[0].blocks[0].focus == "SOL@PB1");
  CHECK(seg.warnings.empty());
}

TEST_CASE("example 2 contains exactly one collective integrated episode") {
  Corpus c = testutil::load_fixture("example2.tsv");
  Segmentation seg = segment(c, {});
  std::vector<Expect> expected = {
      {43708.0, 43709.0, EpisodeLabel::Solo, {{"L"}}},
      {43709.0, 43712.0, EpisodeLabel::Int, {{"C", "L"}}},
      {43712.0, 43718.0, EpisodeLabel::Solo, {{"C"}}},
  };
  check_episodes(seg.episodes, expected);
}

TEST_CASE("example 3 segments into the full fifteen-episode sequence") {
  Corpus c = testutil::load_fixture("example3.tsv");
  Segmentation seg = segment(c, {});
  const auto L = std::vector<std::string>{"L"};
  const auto M = std::vector<std::string>{"M"};
  const auto C = std::vector<std::string>{"C"};
  const auto CM = std::vector<std::string>{"C", "M"};
  std::vector<Expect> expected = {
      {43671.0, 43673.2, EpisodeLabel::Solo, {M}},
      {43673.2, 43674.0, EpisodeLabel::Int, {CM}},
      {43674.0, 43674.4, EpisodeLabel::Solo, {C}},
      {43674.4, 43682.0, EpisodeLabel::Solo, {M}},
      {43682.0, 43682.8, EpisodeLabel::Solo, {L}},
      {43682.8, 43683.2, EpisodeLabel::NonInt, {M, L}},
      {43683.2, 43690.2, EpisodeLabel::Solo, {M}},
      {43690.2, 43690.8, EpisodeLabel::Int, {CM}},
      {43690.8, 43691.0, EpisodeLabel::Solo, {M}},
      {43691.0, 43692.0, EpisodeLabel::Idle, {}},
      {43692.0, 43697.0, EpisodeLabel::Solo, {M}},
      {43697.0, 43699.0, EpisodeLabel::Int, {CM}},
      {43699.0, 43700.5, EpisodeLabel::NonInt, {CM, L}},
      {43700.5, 43707.0, EpisodeLabel::NonInt, {M, L}},
      {43707.0, 43718.0, EpisodeLabel::Solo, {L}},
  };
  check_episodes(seg.episodes, expected);

  // The span is 12:07:51 - 12:08:38: 47 s, tiled exactly.
  TimeMs total = 0;
  for (const auto& e : seg.episodes) total += e.interval.duration_ms();
  CHECK(total == 47000);
}

TEST_CASE("episodes tile the corpus span on random corpora") {
  for (std::uint64_t seed = 400; seed < 415; ++seed) {
    Corpus corpus = testutil::random_corpus(seed);
    if (corpus.units.empty()) continue;
    Segmentation seg = segment(corpus, {});
    TimeInterval span = corpus.span();
    CHECK(seg.episodes.front().interval.start_ms == span.start_ms);
    CHECK(seg.episodes.back().interval.end_ms == span.end_ms);
    TimeMs total = 0;
    for (std::size_t i = 0; i < seg.episodes.size(); ++i) {
      total += seg.episodes[i].interval.duration_ms();
      if (i > 0) {
        CHECK(seg.episodes[i - 1].interval.end_ms == seg.episodes[i].interval.start_ms);
        bool distinct = !(seg.episodes[i - 1].label == seg.episodes[i].label &&
                          seg.episodes[i - 1].blocks == seg.episodes[i].blocks);
        CHECK(distinct);  // adjacent episodes differ in label or partition
      }
    }
    CHECK(total == span.duration_ms());
  }
}

TEST_CASE("segmentation is invariant under input permutation") {
  Corpus c = testutil::load_fixture("example3.tsv");
  std::vector<AnnotationUnit> reversed(c.units.rbegin(), c.units.rend());
  Corpus permuted = Corpus::build(std::move(reversed), c.actors, c.meta);
  Segmentation a = segment(c, {});
  Segmentation b = segment(permuted, {});
  REQUIRE(a.episodes.size() == b.episodes.size());
  for (std::size_t i = 0; i < a.episodes.size(); ++i) {
    CHECK(a.episodes[i].interval == b.episodes[i].interval);
    CHECK(a.episodes[i].label == b.episodes[i].label);
    CHECK(a.episodes[i].blocks == b.episodes[i].blocks);
  }
}

TEST_CASE("sub-threshold episodes merge backward with a warning") {
  // A 0.2 s solo blip by M inside L's long turn.
  Corpus c = parse_ok(corpus_text(
      "a\tL\tV\t0.000\t5.000\tA\tGEN\tSOL:x@PB1\t\"p\"\t-\t-\t-\t-\n"
      "b\tM\tV\t5.000\t5.200\tA\tGEN\tSOL:x@PB1\t\"q\"\t-\t-\t-\t-\n"
      "c\tL\tV\t5.200\t9.000\tA\tGEN\tSOL:x@PB1\t\"r\"\t-\t-\t-\t-\n"));
  AnalysisConfig config;
  SUBCASE("zero threshold keeps slice fidelity, no warnings") {
    Segmentation seg = segment(c, config);
    CHECK(seg.episodes.size() == 3);
    CHECK(seg.warnings.empty());
  }
  SUBCASE("a 300 ms threshold absorbs the blip into its predecessor") {
    config.min_episode_ms = 300;
    Segmentation seg = segment(c, config);
    REQUIRE(seg.warnings.size() == 1);
    CHECK(seg.warnings[0].code == Code::W_MIN_EPISODE_MERGE);
    // The two L episodes flank the absorbed blip and re-coalesce.
    REQUIRE(seg.episodes.size() == 1);
    CHECK(seg.episodes[0].interval == TimeInterval{0, 9000});
    CHECK(seg.episodes[0].blocks[0].actors == std::vector<std::string>{"L"});
  }
  SUBCASE("a sub-threshold head merges forward") {
    config.min_episode_ms = 300;
    Corpus head = parse_ok(corpus_text(
        "a\tM\tV\t0.000\t0.200\tA\tGEN\tSOL:x@PB1\t\"p\"\t-\t-\t-\t-\n"
        "b\tL\tV\t0.200\t4.000\tA\tGEN\tSOL:x@PB1\t\"q\"\t-\t-\t-\t-\n"));
    Segmentation seg = segment(head, config);
    REQUIRE(seg.episodes.size() == 1);
    CHECK(seg.episodes[0].interval == TimeInterval{0, 4000});
    CHECK(seg.episodes[0].blocks[0].actors == std::vector<std::string>{"L"});
    CHECK(seg.warnings.size() == 1);
  }
}

TEST_CASE("an actor with conflicting own focuses becomes an intra-split singleton") {
  Corpus c = parse_ok(corpus_text(
      "a\tL\tV\t0.000\t4.000\tA\tGEN\tSOL:x@PB1\t\"p\"\t-\t-\t-\t-\n"
      "b\tL\tG\t1.000\t3.000\t-\tPoint\tTASK:t1\t-\tC16\t-\thand\t-\n"
      "c\tM\tV\t1.000\t3.000\tA\tGEN\tSOL:x@PB1\t\"q\"\t-\t-\t-\t-\n"));
  Segmentation seg = segment(c, {});
  auto middle = std::find_if(seg.episodes.begin(), seg.episodes.end(), [](const Episode& e) {
    return e.interval == TimeInterval{1000, 3000};
  });
  REQUIRE(middle != seg.episodes.end());
  CHECK(middle->label == EpisodeLabel::NonInt);
  REQUIRE(middle->blocks.size() == 2);
  const Block* split = nullptr;
  for (const auto& b : middle->blocks) {
    if (b.intra_split) split = &b;
  }
  REQUIRE(split != nullptr);
  CHECK(split->actors == std::vector<std::string>{"L"});
  CHECK(split->focus == "SOL@PB1|TASK:t1");
  CHECK(!block_space(*split).has_value());
  CHECK(classify_disalignment(*middle) == DisalignmentType::Mixed);
}

TEST_CASE("slice partitions refine from instance to problem to space") {
  for (std::uint64_t seed = 500; seed < 512; ++seed) {
    Corpus corpus = testutil::random_corpus(seed);
    if (corpus.units.empty()) continue;
    Timeline timeline = build_timeline(corpus);
    for (const auto& slice : timeline.slices) {
      std::map<Granularity, std::map<std::string, std::string>> actor_key;
      for (Granularity g : {Granularity::Instance, Granularity::Problem, Granularity::Space}) {
        AnalysisConfig cfg;
        cfg.granularity = g;
        for (const auto& focus : slice_focuses(corpus, slice, cfg)) {
          std::set<std::string> keys;
          for (const auto& o : focus.focus_objects) keys.insert(match_key(o, g));
          std::string joined;
          for (const auto& k : keys) joined += k + "|";
          actor_key[g][focus.actor] = joined;
        }
      }
      // If two actors agree at a fine level they agree at every coarser one.
      auto refines = [&](Granularity fine, Granularity coarse) {
        for (const auto& [a, ka] : actor_key[fine]) {
          for (const auto& [b, kb] : actor_key[fine]) {
            if (ka == kb) CHECK(actor_key[coarse][a] == actor_key[coarse][b]);
          }
        }
      };
      refines(Granularity::Instance, Granularity::Problem);
      refines(Granularity::Problem, Granularity::Space);
    }
  }
}

TEST_CASE("disalignment taxonomy over constructed block layouts") {
  auto episode_with = [](const std::string& focus_a, const std::string& focus_b,
                         const std::string& focus_c = "") {
    Episode e;
    e.label = EpisodeLabel::NonInt;
    e.interval = {0, 1000};
    Block x;
    x.actors = {"A"};
    x.focus = focus_a;
    Block y;
    y.actors = {"B"};
    y.focus = focus_b;
    e.blocks = {x, y};
    if (!focus_c.empty()) {
      Block z;
      z.actors = {"C"};
      z.focus = focus_c;
      e.blocks.push_back(z);
    }
    return e;
  };

  CHECK(classify_disalignment(episode_with("SOL@PB1", "SOL@PB2")) ==
        DisalignmentType::ProblemShift);
  CHECK(classify_disalignment(episode_with("SOL:x@PB1", "TASK:t1")) ==
        DisalignmentType::ProblemVsGroup);
  CHECK(classify_disalignment(episode_with("SOL:x@PB1", "PROC")) ==
        DisalignmentType::ProblemVsDomain);
  CHECK(classify_disalignment(episode_with("GOAL:g1", "PROC:p1")) ==
        DisalignmentType::GroupVsDomain);
  CHECK(classify_disalignment(episode_with("GOAL:g1", "TASK:t1")) ==
        DisalignmentType::WithinGroup);
  CHECK(classify_disalignment(episode_with("OBJ:o1", "PROC:p1")) ==
        DisalignmentType::WithinDomain);
  CHECK(classify_disalignment(episode_with("SOL@PB1", "TASK:t1", "PROC")) ==
        DisalignmentType::Mixed);
  CHECK(classify_disalignment(episode_with("SOL@PB1", "SOL@PB2", "SOL@PB3")) ==
        DisalignmentType::Mixed);

  Episode aligned = episode_with("SOL@PB1", "SOL@PB2");
  aligned.label = EpisodeLabel::Int;
  CHECK_THROWS_AS(classify_disalignment(aligned), Error);
}

TEST_CASE("segmenting an empty corpus refuses") {
  CHECK_THROWS_AS(segment(Corpus::build({}), {}), Error);
}
