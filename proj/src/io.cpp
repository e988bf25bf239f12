#include "cometlens/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cometlens {

const char* const kTsvHeader =
    "unit_id\tactor\tmodality\tt_start\tt_end\tmodulation\taction\tobject\t"
    "transcription\tobj1\tobj2\ttool\tarea";

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kColumns[] = {"unit_id", "actor",  "modality", "t_start", "t_end",
                                    "modulation", "action", "object", "transcription",
                                    "obj1", "obj2", "tool", "area"};
constexpr int kColumnCount = 13;

// Returns the 1-based line of the first invalid byte, or 0 if clean.
int invalid_utf8_line(std::string_view bytes) {
  int line = 1;
  std::size_t i = 0;
  auto cont = [&](std::size_t k) {
    return i + k < bytes.size() && (static_cast<unsigned char>(bytes[i + k]) & 0xC0) == 0x80;
  };
  while (i < bytes.size()) {
    unsigned char c = static_cast<unsigned char>(bytes[i]);
    if (c == '\n') ++line;
    if (c < 0x80) {
      ++i;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2 && cont(1)) {
      i += 2;
    } else if ((c & 0xF0) == 0xE0 && cont(1) && cont(2)) {
      i += 3;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4 && cont(1) && cont(2) && cont(3)) {
      i += 4;
    } else {
      return line;
    }
  }
  return 0;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

bool is_absent(const std::string& field) { return field == "-" || field.empty(); }

std::string escape_text(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::optional<std::string> unescape_text(const std::string& field) {
  if (field.size() < 2 || field.front() != '"' || field.back() != '"') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < field.size(); ++i) {
    char c = field[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (i + 2 >= field.size()) return std::nullopt;
    char e = field[++i];
    switch (e) {
      case '\\': out.push_back('\\'); break;
      case '"': out.push_back('"'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: return std::nullopt;
    }
  }
  return out;
}

struct RowParser {
  ParseReport& report;
  bool failed = false;

  void error(int line, Code code, std::string message) {
    report.errors.push_back({line, code, std::move(message)});
    failed = true;
  }
  void warn(int line, Code code, std::string message) {
    report.warnings.push_back({line, code, std::move(message)});
  }

  // Shared field-level checks for both formats. Returns the unit only if
  // every field parsed; diagnostics accumulate either way.
  std::optional<AnnotationUnit> parse_fields(int line, const std::string& unit_id,
                                             const std::string& actor, const std::string& modality,
                                             const std::string& t_start, const std::string& t_end,
                                             const std::string& modulation, const std::string& action,
                                             const std::string& object, const std::string& transcription,
                                             const std::string& obj1, const std::string& obj2,
                                             const std::string& tool, const std::string& area) {
    bool ok = true;
    AnnotationUnit u;

    if (is_absent(unit_id)) {
      error(line, Code::E_ROW, "unit_id is required");
      ok = false;
    }
    u.unit_id = unit_id;

    if (is_absent(actor)) {
      error(line, Code::E_ACTOR, "actor is required");
      ok = false;
    }
    u.actor = actor;

    auto mod = parse_modality(modality);
    if (!mod) {
      error(line, Code::E_FIELDGROUP, "unknown modality '" + modality + "'");
      return std::nullopt;
    }
    u.modality = *mod;

    auto ts = parse_time(t_start);
    auto te = parse_time(t_end);
    if (!ts || !te) {
      error(line, Code::E_TIME, "unparseable time");
      ok = false;
    } else if (*te < *ts) {
      error(line, Code::E_TIME, "t_end " + t_end + " precedes t_start " + t_start);
      ok = false;
    } else {
      u.interval = {*ts, *te};
    }

    if (u.modality == Modality::Verbal) {
      if (!is_absent(modulation)) {
        auto m = parse_modulation(modulation);
        if (!m) {
          error(line, Code::E_FIELDGROUP, "unknown modulation '" + modulation + "'");
          ok = false;
        } else {
          u.modulation = *m;
        }
      }
      auto va = parse_verbal_action(action);
      if (!va) {
        error(line, Code::E_FIELDGROUP, "unknown verbal action '" + action + "'");
        ok = false;
      } else {
        u.v_action = *va;
      }
      if (!is_absent(obj1) || !is_absent(obj2) || !is_absent(tool) || !is_absent(area)) {
        error(line, Code::E_FIELDGROUP, "gestural attributes on a verbal unit");
        ok = false;
      }
    } else {
      if (!is_absent(modulation)) {
        error(line, Code::E_FIELDGROUP, "modulation on a gestural unit");
        ok = false;
      }
      if (is_absent(action)) {
        error(line, Code::E_FIELDGROUP, "gestural unit without action");
        ok = false;
      } else {
        u.g_action = parse_gesture_action(action);
        if (u.g_action->kind == GestureKind::Ext)
          warn(line, Code::W_EXT_ACTION, "action '" + action + "' outside the known vocabulary");
      }
      GestureAttrs attrs;
      if (is_absent(obj1)) {
        error(line, Code::E_FIELDGROUP, "gestural unit without obj1");
        ok = false;
      } else {
        attrs.obj1 = obj1;
      }
      if (!is_absent(obj2)) attrs.obj2 = obj2;
      if (!is_absent(tool)) attrs.tool = parse_tool(tool);
      if (!is_absent(area)) attrs.area = area;
      u.attrs = std::move(attrs);
    }

    auto obj = parse_object(object);
    if (!obj) {
      error(line, Code::E_OBJECT, "malformed object token '" + object + "'");
      ok = false;
    } else {
      u.object = *obj;
    }

    u.transcription = transcription;
    if (u.modality == Modality::Verbal && u.transcription.empty())
      warn(line, Code::W_TRANSCRIPTION, "verbal unit without transcription");

    if (!ok) return std::nullopt;
    return u;
  }
};

ParseResult finalize(std::vector<AnnotationUnit> units, std::vector<std::string> actors,
                     std::map<std::string, std::string> meta, ParseReport report) {
  ParseResult result;
  result.report = std::move(report);
  result.report.unit_count = units.size();
  if (!result.report.errors.empty()) {
    result.report.unit_count = 0;
    return result;
  }
  try {
    result.corpus = Corpus::build(std::move(units), std::move(actors), std::move(meta));
  } catch (const Error& e) {
    result.report.errors.push_back({0, e.code(), e.what()});
    result.report.unit_count = 0;
    return result;
  }
  result.report.unit_count = result.corpus->units.size();
  return result;
}

ParseResult parse_tsv(std::string_view input) {
  ParseReport report;
  RowParser rp{report};

  std::vector<AnnotationUnit> units;
  std::vector<std::string> actors;
  std::map<std::string, std::string> meta;
  std::map<std::string, int> id_lines;

  std::istringstream in{std::string(input)};
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;

    if (!saw_header) {
      if (line[0] == '#') {
        auto parts = split_tabs(line);
        if (parts[0] == "#meta" && parts.size() == 3) {
          meta[parts[1]] = parts[2];
        } else if (parts[0] == "#actor" && parts.size() == 2 && !parts[1].empty()) {
          actors.push_back(parts[1]);
        } else {
          rp.warn(line_no, Code::W_DIRECTIVE, "unrecognized directive ignored");
        }
        continue;
      }
      if (line != kTsvHeader) {
        report.errors.push_back({line_no, Code::E_HEADER, "missing or renamed columns"});
        return finalize({}, {}, {}, std::move(report));
      }
      saw_header = true;
      continue;
    }

    if (line[0] == '#') {
      rp.warn(line_no, Code::W_DIRECTIVE, "directive after header ignored");
      continue;
    }

    auto f = split_tabs(line);
    if (static_cast<int>(f.size()) != kColumnCount) {
      rp.error(line_no, Code::E_ROW,
               "row has " + std::to_string(f.size()) + " fields, expected 13");
      continue;
    }

    std::string transcription;
    if (!is_absent(f[8])) {
      auto text = unescape_text(f[8]);
      if (!text) {
        rp.error(line_no, Code::E_ROW, "transcription must be \"-quoted or -");
        continue;
      }
      transcription = *text;
    }

    auto unit = rp.parse_fields(line_no, f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7],
                                transcription, f[9], f[10], f[11], f[12]);
    if (!unit) continue;

    auto [it, inserted] = id_lines.emplace(unit->unit_id, line_no);
    if (!inserted) {
      rp.error(line_no, Code::E_DUPID,
               "unit id " + unit->unit_id + " already used at line " + std::to_string(it->second));
      continue;
    }
    units.push_back(std::move(*unit));
  }

  if (!saw_header) {
    report.errors.push_back({line_no == 0 ? 1 : line_no, Code::E_HEADER, "header line missing"});
    return finalize({}, {}, {}, std::move(report));
  }

  // An explicit roster must cover every unit; report at the unit's line.
  if (!actors.empty()) {
    std::set<std::string> roster(actors.begin(), actors.end());
    for (const auto& u : units) {
      if (!roster.count(u.actor))
        rp.error(id_lines[u.unit_id], Code::E_ACTOR, "actor " + u.actor + " not in declared roster");
    }
  }

  return finalize(std::move(units), std::move(actors), std::move(meta), std::move(report));
}

std::string json_string_or(const ordered_json& j, const std::string& dash_is_absent) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == dash_is_absent) return "";
    return s;
  }
  return "";
}

ParseResult parse_doc(std::string_view input) {
  ParseReport report;
  RowParser rp{report};

  ordered_json doc = ordered_json::parse(input, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    report.errors.push_back({0, Code::E_HEADER, "input is not a valid structured document"});
    return finalize({}, {}, {}, std::move(report));
  }

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "meta" && it.key() != "actors" && it.key() != "units") {
      report.errors.push_back({0, Code::E_HEADER, "unknown top-level key '" + it.key() + "'"});
      return finalize({}, {}, {}, std::move(report));
    }
  }

  std::map<std::string, std::string> meta;
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) {
      report.errors.push_back({0, Code::E_HEADER, "meta must be an object of strings"});
      return finalize({}, {}, {}, std::move(report));
    }
    for (auto it = doc["meta"].begin(); it != doc["meta"].end(); ++it) {
      if (!it.value().is_string()) {
        report.errors.push_back({0, Code::E_HEADER, "meta values must be strings"});
        return finalize({}, {}, {}, std::move(report));
      }
      meta[it.key()] = it.value().get<std::string>();
    }
  }

  std::vector<std::string> actors;
  if (doc.contains("actors")) {
    if (!doc["actors"].is_array()) {
      report.errors.push_back({0, Code::E_HEADER, "actors must be an array"});
      return finalize({}, {}, {}, std::move(report));
    }
    for (const auto& a : doc["actors"]) {
      if (!a.is_string() || a.get<std::string>().empty()) {
        report.errors.push_back({0, Code::E_ACTOR, "actor tokens must be non-empty strings"});
        return finalize({}, {}, {}, std::move(report));
      }
      actors.push_back(a.get<std::string>());
    }
  }

  std::vector<AnnotationUnit> units;
  std::map<std::string, int> id_lines;
  if (doc.contains("units")) {
    if (!doc["units"].is_array()) {
      report.errors.push_back({0, Code::E_HEADER, "units must be an array"});
      return finalize({}, {}, {}, std::move(report));
    }
    int index = 0;
    for (const auto& ju : doc["units"]) {
      ++index;  // serves as the diagnostic "line"
      if (!ju.is_object()) {
        rp.error(index, Code::E_ROW, "unit entries must be objects");
        continue;
      }
      bool bad_key = false;
      for (auto it = ju.begin(); it != ju.end(); ++it) {
        if (std::find(std::begin(kColumns), std::end(kColumns), it.key()) == std::end(kColumns)) {
          rp.error(index, Code::E_HEADER, "unknown unit field '" + it.key() + "'");
          bad_key = true;
        }
      }
      if (bad_key) continue;

      auto field = [&](const char* name) -> std::string {
        if (!ju.contains(name) || ju[name].is_null()) return "";
        const auto& v = ju[name];
        if (v.is_string()) {
          std::string s = v.get<std::string>();
          return s == "-" ? "" : s;
        }
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number_float()) {
          // Times may arrive as JSON numbers; render at ms precision.
          double d = v.get<double>();
          long long ms = static_cast<long long>(d * 1000.0 + (d >= 0 ? 0.5 : -0.5));
          return format_seconds(ms);
        }
        return "";
      };

      auto unit = rp.parse_fields(index, field("unit_id"), field("actor"), field("modality"),
                                  field("t_start"), field("t_end"), field("modulation"),
                                  field("action"), field("object"), json_string_or(ju.contains("transcription") ? ju["transcription"] : ordered_json(), "-"),
                                  field("obj1"), field("obj2"), field("tool"), field("area"));
      if (!unit) continue;
      auto [it, inserted] = id_lines.emplace(unit->unit_id, index);
      if (!inserted) {
        rp.error(index, Code::E_DUPID, "unit id " + unit->unit_id + " already used at unit " +
                                           std::to_string(it->second));
        continue;
      }
      units.push_back(std::move(*unit));
    }
  }

  if (!actors.empty()) {
    std::set<std::string> roster(actors.begin(), actors.end());
    for (const auto& u : units) {
      if (!roster.count(u.actor))
        rp.error(id_lines[u.unit_id], Code::E_ACTOR, "actor " + u.actor + " not in declared roster");
    }
  }

  return finalize(std::move(units), std::move(actors), std::move(meta), std::move(report));
}

void write_tsv_row(std::string& out, const AnnotationUnit& u) {
  auto dash = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
  out += u.unit_id;
  out += '\t';
  out += u.actor;
  out += '\t';
  out += to_token(u.modality);
  out += '\t';
  out += format_seconds(u.interval.start_ms);
  out += '\t';
  out += format_seconds(u.interval.end_ms);
  out += '\t';
  out += u.is_verbal() ? to_token(u.modulation) : "-";
  out += '\t';
  out += action_token(u);
  out += '\t';
  out += format_object(u.object);
  out += '\t';
  out += u.transcription.empty() ? "-" : escape_text(u.transcription);
  out += '\t';
  if (u.attrs) {
    out += dash(u.attrs->obj1);
    out += '\t';
    out += dash(u.attrs->obj2);
    out += '\t';
    out += u.attrs->tool ? tool_token(*u.attrs->tool) : "-";
    out += '\t';
    out += dash(u.attrs->area);
  } else {
    out += "-\t-\t-\t-";
  }
  out += '\n';
}

std::string write_tsv(const Corpus& corpus) {
  std::string out;
  for (const auto& [k, v] : corpus.meta) {
    out += "#meta\t" + k + "\t" + v + "\n";
  }
  // The roster is emitted only when it cannot be inferred from the rows.
  std::vector<std::string> inferred;
  for (const auto& u : corpus.units) inferred.push_back(u.actor);
  std::sort(inferred.begin(), inferred.end());
  inferred.erase(std::unique(inferred.begin(), inferred.end()), inferred.end());
  if (inferred != corpus.actors) {
    for (const auto& a : corpus.actors) out += "#actor\t" + a + "\n";
  }
  out += kTsvHeader;
  out += '\n';
  for (const auto& u : corpus.units) write_tsv_row(out, u);
  return out;
}

std::string write_doc(const Corpus& corpus) {
  ordered_json doc;
  doc["meta"] = ordered_json::object();
  for (const auto& [k, v] : corpus.meta) doc["meta"][k] = v;
  doc["actors"] = corpus.actors;
  doc["units"] = ordered_json::array();
  for (const auto& u : corpus.units) {
    ordered_json ju;
    ju["unit_id"] = u.unit_id;
    ju["actor"] = u.actor;
    ju["modality"] = to_token(u.modality);
    ju["t_start"] = format_seconds(u.interval.start_ms);
    ju["t_end"] = format_seconds(u.interval.end_ms);
    if (u.is_verbal()) ju["modulation"] = to_token(u.modulation);
    ju["action"] = action_token(u);
    ju["object"] = format_object(u.object);
    if (!u.transcription.empty()) ju["transcription"] = u.transcription;
    if (u.attrs) {
      ju["obj1"] = u.attrs->obj1;
      if (!u.attrs->obj2.empty()) ju["obj2"] = u.attrs->obj2;
      if (u.attrs->tool) ju["tool"] = tool_token(*u.attrs->tool);
      if (!u.attrs->area.empty()) ju["area"] = u.attrs->area;
    }
    doc["units"].push_back(std::move(ju));
  }
  return doc.dump(2) + "\n";
}

}  // namespace

ParseResult parse_corpus(std::string_view input, Format format) {
  if (int line = invalid_utf8_line(input); line != 0) {
    ParseResult result;
    result.report.errors.push_back({line, Code::E_ENCODING, "input is not valid UTF-8"});
    return result;
  }
  return format == Format::Tsv ? parse_tsv(input) : parse_doc(input);
}

std::string write_corpus(const Corpus& corpus, Format format) {
  return format == Format::Tsv ? write_tsv(corpus) : write_doc(corpus);
}

}  // namespace cometlens
