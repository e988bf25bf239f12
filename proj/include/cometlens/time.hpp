#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace cometlens {

// All times are integer milliseconds since session midnight. Keeping them
// integral makes interval arithmetic exact and report bytes stable.
using TimeMs = std::int64_t;

struct TimeInterval {
  TimeMs start_ms = 0;
  TimeMs end_ms = 0;

  TimeMs duration_ms() const { return end_ms - start_ms; }
  bool is_point() const { return start_ms == end_ms; }
  bool valid() const { return start_ms >= 0 && end_ms >= start_ms; }

  bool operator==(const TimeInterval&) const = default;
};

// Accepts decimal seconds ("44907.5", at most three decimals) or a clock
// time since midnight ("12:08:27" / "12:08:27.500"). Returns nullopt on
// anything else, including negative values and sub-millisecond digits.
std::optional<TimeMs> parse_time(const std::string& text);

// Fixed three-decimal seconds, e.g. 43707500 -> "43707.500".
std::string format_seconds(TimeMs ms);

}  // namespace cometlens
