#pragma once
// Internal text helpers shared by the CSV and config parsers. Parsing is
// locale-independent (std::from_chars) and strict: every helper either
// consumes the whole field or reports failure.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace horizonkit::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end;
}

inline bool parse_double(std::string_view field, double& out) {
  return parse_number(field, out);
}

inline bool parse_long(std::string_view field, long& out) {
  return parse_number(field, out);
}

inline bool parse_int(std::string_view field, int& out) {
  return parse_number(field, out);
}

inline bool parse_uint64(std::string_view field, std::uint64_t& out) {
  return parse_number(field, out);
}

}  // namespace horizonkit::detail
