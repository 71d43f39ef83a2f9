#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "injrad/errors.hpp"

namespace injrad::text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Whole-token real number; ParseError otherwise.
inline double parse_real(std::string_view token, const std::string& context) {
  token = trim(token);
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto res = std::from_chars(first, last, v);
  if (token.empty() || res.ec != std::errc() || res.ptr != last)
    throw ParseError("malformed number '" + std::string(token) + "' in " + context);
  return v;
}

inline long parse_integer(std::string_view token, const std::string& context) {
  token = trim(token);
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  long v = 0;
  auto res = std::from_chars(first, last, v);
  if (token.empty() || res.ec != std::errc() || res.ptr != last)
    throw ParseError("malformed integer '" + std::string(token) + "' in " + context);
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Shortest round-trip decimal form.
inline std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace injrad::text
