#pragma once

#include <stdexcept>
#include <string>

namespace cometlens {

// Stable machine-readable codes surfaced in parse reports, exceptions and
// the CLI. E_* are errors, W_* are warnings.
enum class Code {
  E_ENCODING,
  E_HEADER,
  E_ROW,
  E_TIME,
  E_DUPID,
  E_FIELDGROUP,
  E_OBJECT,
  E_ACTOR,
  E_EMPTY,
  E_UNKNOWN_UNIT,
  E_NOT_DISALIGNED,
  E_PATTERN,
  E_SPEC,
  E_NO_VERBAL,
  E_CONFIG,
  E_INTERNAL,
  W_EXT_ACTION,
  W_TRANSCRIPTION,
  W_DIRECTIVE,
  W_EMPTY,
  W_MIN_EPISODE_MERGE,
};

const char* code_name(Code c);

// One diagnostic tied to an input location. line is 1-based; for the
// structured document format it is the 1-based unit index; 0 means the
// whole input (or not input-related).
struct Diag {
  int line = 0;
  Code code = Code::E_INTERNAL;
  std::string message;

  bool operator==(const Diag&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(Code code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message),
        code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace cometlens
