#pragma once

// Shared reader for the blank-line separated text formats.

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wmkit/error.hpp"

namespace wmkit::detail {

struct Line {
  int number;
  std::string text;
};

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits the stream into blocks at blank lines. Comment-only lines are dropped
// without ending a block.
inline std::vector<std::vector<Line>> read_blocks(std::istream& in) {
  std::vector<std::vector<Line>> blocks(1);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    std::string s = strip_comment(raw);
    if (!s.empty()) blocks.back().push_back({number, std::move(s)});
  }
  if (blocks.back().empty()) blocks.pop_back();
  return blocks;
}

inline int expect_field(const Line& line, const std::string& key) {
  std::istringstream ls(line.text);
  std::string word;
  int value = 0;
  if (!(ls >> word) || word != key || !(ls >> value)) {
    throw InvalidArgument("line " + std::to_string(line.number) + ": expected '" + key + " <int>'");
  }
  return value;
}

}  // namespace wmkit::detail
