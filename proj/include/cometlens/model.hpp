#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cometlens/diagnostics.hpp"
#include "cometlens/time.hpp"

namespace cometlens {

// Annotation tier a unit was coded on. The verbal tier carries speech
// units, the gestural tier carries graphico-gestural units (hand or tool
// actions on plans, drafts and other documents).
enum class Modality { Verbal, Gestural };

enum class Modulation { Assert, Request };

enum class VerbalKind { Gen, Eval, Info, Interp };

enum class Polarity { Pos, Neg, Neutral };

// Closed vocabulary plus an extension bucket: corpora in the wild contain
// action tokens outside the documented set, which parse as Ext with the
// original token preserved.
enum class GestureKind {
  Point,
  Delim2d,
  Delim3d,
  GraphTrac,
  TextTrac,
  Moving,
  Rotating,
  Overlaying,
  Ext,
};

enum class Category { Dat, Sol, Obj, Proc, Goal, Task };

// The three representation spaces object categories map into.
enum class Space { ProblemSolution, Group, Domain };

// Matching levels, finest to coarsest.
enum class Granularity { Instance, Problem, Space };

struct VerbalAction {
  VerbalKind kind = VerbalKind::Gen;
  std::optional<Polarity> polarity;  // present exactly when kind == Eval

  bool operator==(const VerbalAction&) const = default;
};

struct GestureAction {
  GestureKind kind = GestureKind::Point;
  std::string ext_token;  // non-empty exactly when kind == Ext

  bool operator==(const GestureAction&) const = default;
};

// The coded design object an action bears on.
//
//   SOL  solution element, always attached to a problem   SOL:<sid>@<pb>
//   DAT  problem data, optionally problem-scoped          DAT[@<pb>][:<inst>]
//   OBJ / PROC / GOAL / TASK                              CAT[:<inst>]
struct ObjectRef {
  Category category = Category::Dat;
  std::string problem_id;   // required for Sol, optional for Dat
  std::string solution_id;  // Sol only
  std::string instance_id;  // non-Sol categories, optional

  bool operator==(const ObjectRef&) const = default;
};

Space space_of(Category category);
Space space_of(const ObjectRef& object);

// Canonical equality key at a matching level. Two references match at a
// level iff their keys are equal, which makes every level an equivalence
// relation by construction. At Problem level a problem-scoped DAT groups
// by its problem (mirroring SOL), an unscoped DAT only by instance; the
// category always stays in the key, so SOL and DAT never match below
// Space level even when their problem ids coincide.
std::string match_key(const ObjectRef& object, Granularity level);

bool objects_match(const ObjectRef& a, const ObjectRef& b, Granularity level);

std::optional<ObjectRef> parse_object(const std::string& token);
std::string format_object(const ObjectRef& object);

enum class Tool { Hand, Pen, Pencil, Ruler, Other };

struct ToolRef {
  Tool kind = Tool::Hand;
  std::string other_token;  // Tool::Other only, verbatim

  bool operator==(const ToolRef&) const = default;
};

struct GestureAttrs {
  std::string obj1;  // document acted on, required
  std::string obj2;  // e.g. an overlay relation token
  std::optional<ToolRef> tool;
  std::string area;  // table zone token

  bool operator==(const GestureAttrs&) const = default;
};

// One coded action by one actor over a time interval. Exactly the
// modality-appropriate field group is populated: v_action (plus
// modulation) for verbal units, g_action and attrs for gestural ones.
struct AnnotationUnit {
  std::string unit_id;
  std::string actor;
  Modality modality = Modality::Verbal;
  TimeInterval interval;
  Modulation modulation = Modulation::Assert;
  std::optional<VerbalAction> v_action;
  std::optional<GestureAction> g_action;
  ObjectRef object;
  std::string transcription;  // empty means absent
  std::optional<GestureAttrs> attrs;

  bool is_verbal() const { return modality == Modality::Verbal; }

  bool operator==(const AnnotationUnit&) const = default;
};

// Validated, time-ordered unit collection. Construct through build();
// it sorts by (t_start, t_end, unit_id) and enforces the model
// invariants, so downstream stages can rely on them.
struct Corpus {
  std::vector<AnnotationUnit> units;
  std::vector<std::string> actors;  // sorted, unique
  std::map<std::string, std::string> meta;

  static Corpus build(std::vector<AnnotationUnit> units,
                      std::vector<std::string> actors = {},
                      std::map<std::string, std::string> meta = {});

  // Index of a unit by id; throws E_UNKNOWN_UNIT.
  std::size_t index_of(const std::string& unit_id) const;
  const AnnotationUnit& unit(const std::string& unit_id) const;

  // [min t_start, max t_end]; throws E_EMPTY on an empty corpus.
  TimeInterval span() const;

  std::size_t verbal_count() const;

  bool operator==(const Corpus&) const = default;

 private:
  std::map<std::string, std::size_t> index_;
};

struct AnalysisConfig {
  Granularity granularity = Granularity::Problem;
  TimeMs gap_tolerance_ms = 1000;
  TimeMs min_episode_ms = 0;
  // NEAR pairs are reported and classified when true; they never affect
  // episode segmentation either way (slices need strict activity).
  bool include_near = true;

  static constexpr TimeMs time_resolution_ms = 1;

  void validate() const;  // throws E_CONFIG
};

// Semiotic channel of a unit. The annotation modality is binary, but
// redundancy/complementarity of concurrent expression distinguishes
// drawing and writing (graphical) from hand movement (gestural).
enum class Channel { Verbal, Graphical, Gestural };

Channel channel_of(const AnnotationUnit& unit);

// Coarse families used when deciding whether two concurrent actions say
// the same thing: proposing/sketching/outlining all elaborate, judging
// evaluates, informing/interpreting clarify, document handling
// manipulates. Ext tokens compare by token.
enum class ActionFamily { Elaboration, Evaluation, Clarification, Manipulation, Extension };

ActionFamily action_family(const AnnotationUnit& unit);
bool same_action_family(const AnnotationUnit& a, const AnnotationUnit& b);

// Token tables shared by the parser, the writers and the reports.
const char* to_token(Modality m);
const char* to_token(Modulation m);
const char* to_token(Polarity p);
const char* to_token(Category c);
const char* to_token(Space s);
const char* to_token(Granularity g);
const char* to_token(Channel c);

std::string action_token(const AnnotationUnit& unit);   // GEN, EVAL+, Point, ...
std::string verbal_action_token(const VerbalAction& a);
std::string gesture_action_token(const GestureAction& a);
std::string tool_token(const ToolRef& t);
std::string modality_long_token(Modality m);  // VERBAL / GESTURAL

std::optional<Modality> parse_modality(const std::string& token);
std::optional<Modulation> parse_modulation(const std::string& token);
std::optional<VerbalAction> parse_verbal_action(const std::string& token);
GestureAction parse_gesture_action(const std::string& token);  // unknown -> Ext
ToolRef parse_tool(const std::string& token);
std::optional<Granularity> parse_granularity(const std::string& token);

}  // namespace cometlens
