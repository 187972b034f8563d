#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expr.h"

namespace drx {

enum class Policy : std::uint8_t { Posix, PreOrder, PostOrder };

enum class TagSource : std::uint8_t { UserGroup, ParserInserted, WholeMatch };

struct TagInfo {
  TagKind kind = TagKind::Early;
  int partner = -1;
  TagSource source = TagSource::UserGroup;
  int group = -1;  // user group number (1-based), 0 for the whole match, -1 otherwise
  bool opening = true;
};

// Per-tag metadata plus the order in which slots are compared when ranking
// banks.
struct TagTable {
  std::vector<TagInfo> entries;
  std::vector<int> order;
  int groups = 0;
  Policy policy = Policy::Posix;
  // Rank of each user group (index g-1) when groups are counted by closing
  // bracket instead of opening bracket.
  std::vector<int> closing_rank;

  int size() const { return static_cast<int>(entries.size()); }
  // Opening and closing tag of user group g, or of the whole match for g = 0.
  std::optional<std::pair<int, int>> group_tags(int g) const;
};

struct SyntaxError : std::runtime_error {
  SyntaxError(std::size_t pos, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct ParseOptions {
  Policy policy = Policy::Posix;
  // Wraps every starred subexpression in its own tag pair, so that POSIX
  // subpattern rules apply to it.
  bool subpattern_tags = false;
  // '.' and negated classes range over 0-127 instead of all of Unicode.
  bool ascii = false;
};

struct Parsed {
  Regex regex;
  TagTable tags;
};

Parsed parse(const std::string& pattern, const ParseOptions& options = {});

// Renames tags according to map (old id -> new id).
Regex remap_tags(const Regex& r, const std::vector<int>& map);

const char* policy_name(Policy p);
std::optional<Policy> policy_from_name(const std::string& name);

}  // namespace drx
