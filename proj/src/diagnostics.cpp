#include "cometlens/diagnostics.hpp"

namespace cometlens {

const char* code_name(Code c) {
  switch (c) {
    case Code::E_ENCODING: return "E_ENCODING";
    case Code::E_HEADER: return "E_HEADER";
    case Code::E_ROW: return "E_ROW";
    case Code::E_TIME: return "E_TIME";
    case Code::E_DUPID: return "E_DUPID";
    case Code::E_FIELDGROUP: return "E_FIELDGROUP";
    case Code::E_OBJECT: return "E_OBJECT";
    case Code::E_ACTOR: return "E_ACTOR";
    case Code::E_EMPTY: return "E_EMPTY";
    case Code::E_UNKNOWN_UNIT: return "E_UNKNOWN_UNIT";
    case Code::E_NOT_DISALIGNED: return "E_NOT_DISALIGNED";
    case Code::E_PATTERN: return "E_PATTERN";
    case Code::E_SPEC: return "E_SPEC";
    case Code::E_NO_VERBAL: return "E_NO_VERBAL";
    case Code::E_CONFIG: return "E_CONFIG";
    case Code::E_INTERNAL: return "E_INTERNAL";
    case Code::W_EXT_ACTION: return "W_EXT_ACTION";
    case Code::W_TRANSCRIPTION: return "W_TRANSCRIPTION";
    case Code::W_DIRECTIVE: return "W_DIRECTIVE";
    case Code::W_EMPTY: return "W_EMPTY";
    case Code::W_MIN_EPISODE_MERGE: return "W_MIN_EPISODE_MERGE";
  }
  return "E_INTERNAL";
}

}  // namespace cometlens
