#pragma once

#include <array>
#include <vector>

#include "cometlens/intervals.hpp"
#include "cometlens/model.hpp"

namespace cometlens {

enum class Verdict { Integrated, NonIntegrated };
enum class VerdictScope { Individual, Collective };
enum class RelationKind { Redundant, Complementary, NotApplicable };

const char* to_token(Verdict v);
const char* to_token(VerdictScope s);
const char* to_token(RelationKind k);

struct IntegrationVerdict {
  ParallelPair pair;
  // Indexed by Granularity: objects_match at Instance / Problem / Space.
  std::array<bool, 3> level_results{};
  Verdict verdict_at_config = Verdict::NonIntegrated;
  VerdictScope scope = VerdictScope::Collective;
};

struct ModalityRelation {
  ParallelPair pair;
  RelationKind kind = RelationKind::NotApplicable;
};

// Integrated iff the two units' objects match at the configured
// granularity; all three levels are reported. Throws E_UNKNOWN_UNIT.
IntegrationVerdict classify_integration(const ParallelPair& pair,
                                        const Corpus& corpus,
                                        const AnalysisConfig& config);

// Redundant / complementary applies to integrated pairs expressed through
// different semiotic channels; everything else is NotApplicable.
ModalityRelation classify_modality_relation(const ParallelPair& pair,
                                            const Corpus& corpus,
                                            const AnalysisConfig& config);

// One fully classified pair, with the unit facts stats needs cached so
// aggregation stays a pure function of this list.
struct ClassifiedPair {
  ParallelPair pair;
  std::array<bool, 3> levels{};
  Verdict verdict = Verdict::NonIntegrated;
  VerdictScope scope = VerdictScope::Collective;
  RelationKind relation = RelationKind::NotApplicable;
  Modality modality_a = Modality::Verbal;
  Modality modality_b = Modality::Verbal;
  Space space_a = Space::ProblemSolution;
  Space space_b = Space::ProblemSolution;
  TimeMs overlap_ms = 0;  // 0 for Near pairs
};

std::vector<ClassifiedPair> classify_pairs(const Corpus& corpus,
                                           const std::vector<ParallelPair>& pairs,
                                           const AnalysisConfig& config);

}  // namespace cometlens
