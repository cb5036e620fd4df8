#pragma once

// Plain `key = value` text files, one pair per line. Blank lines and lines
// starting with '#' are ignored.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "aka/bytes.hpp"
#include "aka/error.hpp"

namespace aka {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

/// Parses `text`, rejecting duplicate keys and keys outside `allowed`.
/// Every allowed key must be present.
inline std::map<std::string, std::string> parse_kv(std::string_view text,
                                                   const std::set<std::string>& allowed,
                                                   ErrorCode on_error) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(on_error, "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!allowed.contains(key)) {
      throw Error(on_error, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!out.emplace(key, value).second) {
      throw Error(on_error, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  for (const auto& key : allowed) {
    if (!out.contains(key)) throw Error(on_error, "missing key '" + key + "'");
  }
  return out;
}

/// Non-negative decimal integer.
inline Integer parse_decimal(const std::string& s, ErrorCode on_error) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(on_error, "'" + s + "' is not a non-negative decimal integer");
  }
  return Integer(s);
}

inline std::string read_text_file(const std::string& path, ErrorCode on_error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(on_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace aka
