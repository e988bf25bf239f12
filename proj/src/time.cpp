#include "cometlens/time.hpp"

#include <cctype>
#include <cstdio>

namespace cometlens {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// "<digits>[.<1-3 digits>]" -> milliseconds.
std::optional<TimeMs> parse_decimal_seconds(const std::string& s) {
  auto dot = s.find('.');
  std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? std::string() : s.substr(dot + 1);
  if (!all_digits(whole) || whole.size() > 10) return std::nullopt;
  if (dot != std::string::npos) {
    if (!all_digits(frac) || frac.size() > 3) return std::nullopt;
  }
  while (frac.size() < 3) frac.push_back('0');
  TimeMs seconds = 0;
  for (char c : whole) seconds = seconds * 10 + (c - '0');
  TimeMs millis = 0;
  for (char c : frac) millis = millis * 10 + (c - '0');
  return seconds * 1000 + millis;
}

}  // namespace

std::optional<TimeMs> parse_time(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto c1 = text.find(':');
  if (c1 == std::string::npos) return parse_decimal_seconds(text);

  auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) return std::nullopt;
  std::string h = text.substr(0, c1);
  std::string m = text.substr(c1 + 1, c2 - c1 - 1);
  std::string s = text.substr(c2 + 1);
  if (!all_digits(h) || h.size() > 2 || m.size() != 2 || !all_digits(m)) return std::nullopt;
  auto sec_ms = parse_decimal_seconds(s);
  if (!sec_ms) return std::nullopt;
  auto dot = s.find('.');
  std::string ss = dot == std::string::npos ? s : s.substr(0, dot);
  if (ss.size() != 2) return std::nullopt;
  TimeMs minutes = 0;
  for (char c : m) minutes = minutes * 10 + (c - '0');
  TimeMs hours = 0;
  for (char c : h) hours = hours * 10 + (c - '0');
  if (minutes > 59 || *sec_ms >= 60000) return std::nullopt;
  return ((hours * 60 + minutes) * 60) * 1000 + *sec_ms;
}

std::string format_seconds(TimeMs ms) {
  char buf[32];
  if (ms < 0) {
    std::snprintf(buf, sizeof(buf), "-%lld.%03lld",
                  static_cast<long long>(-ms / 1000), static_cast<long long>(-ms % 1000));
  } else {
    std::snprintf(buf, sizeof(buf), "%lld.%03lld",
                  static_cast<long long>(ms / 1000), static_cast<long long>(ms % 1000));
  }
  return buf;
}

}  // namespace cometlens
