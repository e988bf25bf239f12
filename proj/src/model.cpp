#include "cometlens/model.hpp"

#include <algorithm>
#include <cctype>

namespace cometlens {

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Space space_of(Category category) {
  switch (category) {
    case Category::Dat:
    case Category::Sol:
      return Space::ProblemSolution;
    case Category::Goal:
    case Category::Task:
      return Space::Group;
    case Category::Obj:
    case Category::Proc:
      return Space::Domain;
  }
  return Space::Domain;
}

Space space_of(const ObjectRef& object) { return space_of(object.category); }

std::string match_key(const ObjectRef& object, Granularity level) {
  switch (level) {
    case Granularity::Space:
      return to_token(space_of(object));
    case Granularity::Problem:
      if (object.category == Category::Sol) return "SOL@" + object.problem_id;
      if (object.category == Category::Dat && !object.problem_id.empty())
        return "DAT@" + object.problem_id;
      return std::string(to_token(object.category)) +
             (object.instance_id.empty() ? "" : ":" + object.instance_id);
    case Granularity::Instance:
      return format_object(object);
  }
  return format_object(object);
}

bool objects_match(const ObjectRef& a, const ObjectRef& b, Granularity level) {
  return match_key(a, level) == match_key(b, level);
}

std::optional<ObjectRef> parse_object(const std::string& token) {
  auto sep = token.find_first_of(":@");
  std::string cat = sep == std::string::npos ? token : token.substr(0, sep);
  std::string rest = sep == std::string::npos ? std::string() : token.substr(sep);

  ObjectRef ref;
  if (cat == "DAT") ref.category = Category::Dat;
  else if (cat == "SOL") ref.category = Category::Sol;
  else if (cat == "OBJ") ref.category = Category::Obj;
  else if (cat == "PROC") ref.category = Category::Proc;
  else if (cat == "GOAL") ref.category = Category::Goal;
  else if (cat == "TASK") ref.category = Category::Task;
  else return std::nullopt;

  if (ref.category == Category::Sol) {
    // SOL:<sid>@<pb>
    if (rest.size() < 2 || rest[0] != ':') return std::nullopt;
    auto at = rest.find('@');
    if (at == std::string::npos) return std::nullopt;
    ref.solution_id = rest.substr(1, at - 1);
    ref.problem_id = rest.substr(at + 1);
    if (ref.solution_id.empty() || ref.problem_id.empty()) return std::nullopt;
    if (ref.solution_id.find(':') != std::string::npos) return std::nullopt;
    return ref;
  }

  if (ref.category == Category::Dat) {
    // DAT[@<pb>][:<inst>]
    if (!rest.empty() && rest[0] == '@') {
      auto colon = rest.find(':');
      ref.problem_id = rest.substr(1, colon == std::string::npos ? std::string::npos : colon - 1);
      if (ref.problem_id.empty()) return std::nullopt;
      rest = colon == std::string::npos ? std::string() : rest.substr(colon);
    }
    if (!rest.empty()) {
      if (rest[0] != ':' || rest.size() < 2) return std::nullopt;
      ref.instance_id = rest.substr(1);
      if (ref.instance_id.find('@') != std::string::npos) return std::nullopt;
    }
    return ref;
  }

  // OBJ | PROC | GOAL | TASK, optional :<inst>
  if (!rest.empty()) {
    if (rest[0] != ':' || rest.size() < 2) return std::nullopt;
    ref.instance_id = rest.substr(1);
    if (ref.instance_id.find_first_of(":@") != std::string::npos) return std::nullopt;
  }
  return ref;
}

std::string format_object(const ObjectRef& object) {
  std::string out = to_token(object.category);
  if (object.category == Category::Sol) {
    out += ":" + object.solution_id + "@" + object.problem_id;
    return out;
  }
  if (object.category == Category::Dat && !object.problem_id.empty()) out += "@" + object.problem_id;
  if (!object.instance_id.empty()) out += ":" + object.instance_id;
  return out;
}

Corpus Corpus::build(std::vector<AnnotationUnit> units, std::vector<std::string> actors,
                     std::map<std::string, std::string> meta) {
  for (const auto& u : units) {
    if (u.unit_id.empty()) throw Error(Code::E_ROW, "unit without id");
    if (u.actor.empty()) throw Error(Code::E_ACTOR, "unit " + u.unit_id + " without actor");
    if (!u.interval.valid())
      throw Error(Code::E_TIME, "unit " + u.unit_id + " has an invalid interval");
    const bool verbal = u.modality == Modality::Verbal;
    if (verbal != u.v_action.has_value() || verbal == u.g_action.has_value() ||
        verbal == u.attrs.has_value()) {
      throw Error(Code::E_FIELDGROUP,
                  "unit " + u.unit_id + " does not populate exactly its modality field group");
    }
    if (!verbal && u.modulation != Modulation::Assert)
      throw Error(Code::E_FIELDGROUP, "unit " + u.unit_id + ": modulation on a gestural unit");
    if (verbal) {
      const bool eval = u.v_action->kind == VerbalKind::Eval;
      if (eval != u.v_action->polarity.has_value())
        throw Error(Code::E_FIELDGROUP,
                    "unit " + u.unit_id + ": polarity present iff the action evaluates");
    } else {
      if (u.attrs->obj1.empty())
        throw Error(Code::E_FIELDGROUP, "unit " + u.unit_id + ": gestural unit without obj1");
      const bool ext = u.g_action->kind == GestureKind::Ext;
      if (ext == u.g_action->ext_token.empty())
        throw Error(Code::E_FIELDGROUP,
                    "unit " + u.unit_id + ": ext_token present iff the action is an extension");
    }
    if (u.object.category == Category::Sol) {
      if (u.object.problem_id.empty() || u.object.solution_id.empty())
        throw Error(Code::E_OBJECT, "unit " + u.unit_id + ": SOL without problem/solution ids");
      if (!u.object.instance_id.empty())
        throw Error(Code::E_OBJECT, "unit " + u.unit_id + ": SOL does not take an instance id");
    } else if (!u.object.solution_id.empty()) {
      throw Error(Code::E_OBJECT, "unit " + u.unit_id + ": solution id on a non-SOL object");
    } else if (u.object.category != Category::Dat && !u.object.problem_id.empty()) {
      throw Error(Code::E_OBJECT, "unit " + u.unit_id + ": problem id on a non-SOL/DAT object");
    }
  }

  std::sort(units.begin(), units.end(), [](const AnnotationUnit& a, const AnnotationUnit& b) {
    if (a.interval.start_ms != b.interval.start_ms) return a.interval.start_ms < b.interval.start_ms;
    if (a.interval.end_ms != b.interval.end_ms) return a.interval.end_ms < b.interval.end_ms;
    return a.unit_id < b.unit_id;
  });

  Corpus corpus;
  corpus.units = std::move(units);
  corpus.meta = std::move(meta);

  for (std::size_t i = 0; i < corpus.units.size(); ++i) {
    auto [it, inserted] = corpus.index_.emplace(corpus.units[i].unit_id, i);
    if (!inserted)
      throw Error(Code::E_DUPID, "duplicate unit id " + corpus.units[i].unit_id);
  }

  if (actors.empty()) {
    for (const auto& u : corpus.units) actors.push_back(u.actor);
  }
  std::sort(actors.begin(), actors.end());
  actors.erase(std::unique(actors.begin(), actors.end()), actors.end());
  for (const auto& u : corpus.units) {
    if (!std::binary_search(actors.begin(), actors.end(), u.actor))
      throw Error(Code::E_ACTOR, "unit " + u.unit_id + " has undeclared actor " + u.actor);
  }
  corpus.actors = std::move(actors);
  return corpus;
}

std::size_t Corpus::index_of(const std::string& unit_id) const {
  auto it = index_.find(unit_id);
  if (it == index_.end()) throw Error(Code::E_UNKNOWN_UNIT, "no unit " + unit_id);
  return it->second;
}

const AnnotationUnit& Corpus::unit(const std::string& unit_id) const {
  return units[index_of(unit_id)];
}

TimeInterval Corpus::span() const {
  if (units.empty()) throw Error(Code::E_EMPTY, "empty corpus has no span");
  TimeMs lo = units.front().interval.start_ms;
  TimeMs hi = lo;
  for (const auto& u : units) hi = std::max(hi, u.interval.end_ms);
  return {lo, hi};
}

std::size_t Corpus::verbal_count() const {
  return static_cast<std::size_t>(std::count_if(
      units.begin(), units.end(), [](const AnnotationUnit& u) { return u.is_verbal(); }));
}

void AnalysisConfig::validate() const {
  if (gap_tolerance_ms < 0) throw Error(Code::E_CONFIG, "gap tolerance must be >= 0");
  if (min_episode_ms < 0) throw Error(Code::E_CONFIG, "min episode duration must be >= 0");
}

Channel channel_of(const AnnotationUnit& unit) {
  if (unit.is_verbal()) return Channel::Verbal;
  switch (unit.g_action->kind) {
    case GestureKind::GraphTrac:
    case GestureKind::TextTrac:
      return Channel::Graphical;
    default:
      return Channel::Gestural;
  }
}

ActionFamily action_family(const AnnotationUnit& unit) {
  if (unit.is_verbal()) {
    switch (unit.v_action->kind) {
      case VerbalKind::Gen: return ActionFamily::Elaboration;
      case VerbalKind::Eval: return ActionFamily::Evaluation;
      case VerbalKind::Info:
      case VerbalKind::Interp: return ActionFamily::Clarification;
    }
  }
  switch (unit.g_action->kind) {
    case GestureKind::Point:
    case GestureKind::Delim2d:
    case GestureKind::Delim3d:
    case GestureKind::GraphTrac:
    case GestureKind::TextTrac:
      return ActionFamily::Elaboration;
    case GestureKind::Moving:
    case GestureKind::Rotating:
    case GestureKind::Overlaying:
      return ActionFamily::Manipulation;
    case GestureKind::Ext:
    default:
      return ActionFamily::Extension;
  }
}

bool same_action_family(const AnnotationUnit& a, const AnnotationUnit& b) {
  ActionFamily fa = action_family(a);
  ActionFamily fb = action_family(b);
  if (fa != fb) return false;
  if (fa == ActionFamily::Extension) return a.g_action->ext_token == b.g_action->ext_token;
  return true;
}

const char* to_token(Modality m) { return m == Modality::Verbal ? "V" : "G"; }

const char* to_token(Modulation m) { return m == Modulation::Assert ? "A" : "REQ"; }

const char* to_token(Polarity p) {
  switch (p) {
    case Polarity::Pos: return "+";
    case Polarity::Neg: return "-";
    case Polarity::Neutral: return "0";
  }
  return "0";
}

const char* to_token(Category c) {
  switch (c) {
    case Category::Dat: return "DAT";
    case Category::Sol: return "SOL";
    case Category::Obj: return "OBJ";
    case Category::Proc: return "PROC";
    case Category::Goal: return "GOAL";
    case Category::Task: return "TASK";
  }
  return "DAT";
}

const char* to_token(Space s) {
  switch (s) {
    case Space::ProblemSolution: return "PROBLEM_SOLUTION";
    case Space::Group: return "GROUP";
    case Space::Domain: return "DOMAIN";
  }
  return "DOMAIN";
}

const char* to_token(Granularity g) {
  switch (g) {
    case Granularity::Instance: return "INSTANCE";
    case Granularity::Problem: return "PROBLEM";
    case Granularity::Space: return "SPACE";
  }
  return "PROBLEM";
}

const char* to_token(Channel c) {
  switch (c) {
    case Channel::Verbal: return "VERBAL";
    case Channel::Graphical: return "GRAPHICAL";
    case Channel::Gestural: return "GESTURAL";
  }
  return "VERBAL";
}

std::string verbal_action_token(const VerbalAction& a) {
  switch (a.kind) {
    case VerbalKind::Gen: return "GEN";
    case VerbalKind::Eval: return std::string("EVAL") + to_token(*a.polarity);
    case VerbalKind::Info: return "INFO";
    case VerbalKind::Interp: return "INTERP";
  }
  return "GEN";
}

std::string gesture_action_token(const GestureAction& a) {
  switch (a.kind) {
    case GestureKind::Point: return "Point";
    case GestureKind::Delim2d: return "Delimit_2d";
    case GestureKind::Delim3d: return "Delimit_3d";
    case GestureKind::GraphTrac: return "Graph_trac";
    case GestureKind::TextTrac: return "Text_trac";
    case GestureKind::Moving: return "Moving";
    case GestureKind::Rotating: return "Rotating";
    case GestureKind::Overlaying: return "Overlaying";
    case GestureKind::Ext: return a.ext_token;
  }
  return a.ext_token;
}

std::string action_token(const AnnotationUnit& unit) {
  return unit.is_verbal() ? verbal_action_token(*unit.v_action)
                          : gesture_action_token(*unit.g_action);
}

std::string tool_token(const ToolRef& t) {
  switch (t.kind) {
    case Tool::Hand: return "hand";
    case Tool::Pen: return "pen";
    case Tool::Pencil: return "pencil";
    case Tool::Ruler: return "ruler";
    case Tool::Other: return t.other_token;
  }
  return t.other_token;
}

std::string modality_long_token(Modality m) {
  return m == Modality::Verbal ? "VERBAL" : "GESTURAL";
}

std::optional<Modality> parse_modality(const std::string& token) {
  std::string t = lower(token);
  if (t == "v" || t == "verbal") return Modality::Verbal;
  if (t == "g" || t == "gestural") return Modality::Gestural;
  return std::nullopt;
}

std::optional<Modulation> parse_modulation(const std::string& token) {
  std::string t = lower(token);
  if (t == "a" || t == "assert") return Modulation::Assert;
  if (t == "r" || t == "req" || t == "request") return Modulation::Request;
  return std::nullopt;
}

std::optional<VerbalAction> parse_verbal_action(const std::string& token) {
  std::string t = lower(token);
  if (t == "gen") return VerbalAction{VerbalKind::Gen, std::nullopt};
  if (t == "info") return VerbalAction{VerbalKind::Info, std::nullopt};
  if (t == "interp") return VerbalAction{VerbalKind::Interp, std::nullopt};
  if (t == "eval+") return VerbalAction{VerbalKind::Eval, Polarity::Pos};
  if (t == "eval-") return VerbalAction{VerbalKind::Eval, Polarity::Neg};
  if (t == "eval0") return VerbalAction{VerbalKind::Eval, Polarity::Neutral};
  return std::nullopt;
}

GestureAction parse_gesture_action(const std::string& token) {
  std::string t = lower(token);
  if (t == "point") return {GestureKind::Point, ""};
  if (t == "delimit_2d") return {GestureKind::Delim2d, ""};
  if (t == "delimit_3d") return {GestureKind::Delim3d, ""};
  if (t == "graph_trac") return {GestureKind::GraphTrac, ""};
  if (t == "text_trac") return {GestureKind::TextTrac, ""};
  if (t == "moving") return {GestureKind::Moving, ""};
  if (t == "rotating") return {GestureKind::Rotating, ""};
  if (t == "overlaying") return {GestureKind::Overlaying, ""};
  return {GestureKind::Ext, token};
}

ToolRef parse_tool(const std::string& token) {
  std::string t = lower(token);
  if (t == "hand") return {Tool::Hand, ""};
  if (t == "pen") return {Tool::Pen, ""};
  if (t == "pencil") return {Tool::Pencil, ""};
  if (t == "ruler") return {Tool::Ruler, ""};
  return {Tool::Other, token};
}

std::optional<Granularity> parse_granularity(const std::string& token) {
  std::string t = lower(token);
  if (t == "instance") return Granularity::Instance;
  if (t == "problem") return Granularity::Problem;
  if (t == "space") return Granularity::Space;
  return std::nullopt;
}

}  // namespace cometlens
