#pragma once

// Internal line/token helpers shared by the two description parsers.

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

namespace omegalab::detail {

struct Token {
  std::string text;
  size_t col = 0;  // 1-based
};

// Lines of the input with 1-based numbers, \r\n tolerated.
inline std::vector<std::pair<size_t, std::string>> split_lines(
    const std::string& text) {
  std::vector<std::pair<size_t, std::string>> out;
  size_t line_no = 1;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      out.emplace_back(line_no, std::move(line));
      ++line_no;
      start = i + 1;
    }
  }
  if (!out.empty() && out.back().second.empty()) out.pop_back();
  return out;
}

inline std::vector<Token> split_tokens(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline bool comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

}  // namespace omegalab::detail
