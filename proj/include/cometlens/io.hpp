#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cometlens/model.hpp"

namespace cometlens {

enum class Format { Tsv, Doc };

struct ParseReport {
  std::size_t unit_count = 0;
  std::vector<Diag> warnings;
  std::vector<Diag> errors;

  bool ok() const { return errors.empty(); }
};

struct ParseResult {
  std::optional<Corpus> corpus;  // present iff report.ok()
  ParseReport report;
};

// Strict parser for the tab-separated corpus format and the equivalent
// structured document (JSON with keys meta/actors/units). Every error
// carries the 1-based line of the offending row (unit index for Doc).
ParseResult parse_corpus(std::string_view input, Format format);

// Deterministic writer; parse_corpus(write_corpus(c)) == c field by field.
std::string write_corpus(const Corpus& corpus, Format format);

// TSV column order, fixed.
extern const char* const kTsvHeader;

}  // namespace cometlens
