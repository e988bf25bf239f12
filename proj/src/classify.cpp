#include "cometlens/classify.hpp"

#include <algorithm>

namespace cometlens {

const char* to_token(Verdict v) {
  return v == Verdict::Integrated ? "INTEGRATED" : "NON_INTEGRATED";
}

const char* to_token(VerdictScope s) {
  return s == VerdictScope::Individual ? "INDIVIDUAL" : "COLLECTIVE";
}

const char* to_token(RelationKind k) {
  switch (k) {
    case RelationKind::Redundant: return "REDUNDANT";
    case RelationKind::Complementary: return "COMPLEMENTARY";
    case RelationKind::NotApplicable: return "NOT_APPLICABLE";
  }
  return "NOT_APPLICABLE";
}

namespace {

ParallelPair canonical(const ParallelPair& pair) {
  if (pair.unit_a <= pair.unit_b) return pair;
  ParallelPair swapped = pair;
  std::swap(swapped.unit_a, swapped.unit_b);
  return swapped;
}

std::array<bool, 3> level_results(const ObjectRef& a, const ObjectRef& b) {
  return {objects_match(a, b, Granularity::Instance),
          objects_match(a, b, Granularity::Problem),
          objects_match(a, b, Granularity::Space)};
}

}  // namespace

IntegrationVerdict classify_integration(const ParallelPair& pair, const Corpus& corpus,
                                        const AnalysisConfig& config) {
  ParallelPair p = canonical(pair);
  const AnnotationUnit& a = corpus.unit(p.unit_a);
  const AnnotationUnit& b = corpus.unit(p.unit_b);

  IntegrationVerdict verdict;
  verdict.pair = p;
  verdict.level_results = level_results(a.object, b.object);
  verdict.verdict_at_config =
      verdict.level_results[static_cast<std::size_t>(config.granularity)]
          ? Verdict::Integrated
          : Verdict::NonIntegrated;
  verdict.scope = a.actor == b.actor ? VerdictScope::Individual : VerdictScope::Collective;
  return verdict;
}

ModalityRelation classify_modality_relation(const ParallelPair& pair, const Corpus& corpus,
                                            const AnalysisConfig& config) {
  ParallelPair p = canonical(pair);
  const AnnotationUnit& a = corpus.unit(p.unit_a);
  const AnnotationUnit& b = corpus.unit(p.unit_b);

  ModalityRelation relation;
  relation.pair = p;

  const bool integrated = objects_match(a.object, b.object, config.granularity);
  if (!integrated || channel_of(a) == channel_of(b)) {
    relation.kind = RelationKind::NotApplicable;
    return relation;
  }

  const bool instance_equal = objects_match(a.object, b.object, Granularity::Instance);
  if (instance_equal && same_action_family(a, b)) {
    relation.kind = RelationKind::Redundant;
  } else {
    // Integrated at the configured level but refined below it, or
    // expressed through different kinds of action: the two units add to
    // each other rather than restate.
    relation.kind = RelationKind::Complementary;
  }
  return relation;
}

std::vector<ClassifiedPair> classify_pairs(const Corpus& corpus,
                                           const std::vector<ParallelPair>& pairs,
                                           const AnalysisConfig& config) {
  std::vector<ClassifiedPair> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    IntegrationVerdict v = classify_integration(pair, corpus, config);
    ModalityRelation r = classify_modality_relation(pair, corpus, config);

    const AnnotationUnit& a = corpus.unit(v.pair.unit_a);
    const AnnotationUnit& b = corpus.unit(v.pair.unit_b);

    ClassifiedPair c;
    c.pair = v.pair;
    c.levels = v.level_results;
    c.verdict = v.verdict_at_config;
    c.scope = v.scope;
    c.relation = r.kind;
    c.modality_a = a.modality;
    c.modality_b = b.modality;
    c.space_a = space_of(a.object);
    c.space_b = space_of(b.object);
    c.overlap_ms = v.pair.relation == PairRelation::Near ? 0 : v.pair.shared.duration_ms();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace cometlens
