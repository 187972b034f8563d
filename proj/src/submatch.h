#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semantics.h"
#include "syntax.h"

namespace drx {

// Slot contents indexed by bank id. Bank 0 is never used.
using Store = std::vector<std::vector<Position>>;

struct MemoryOp {
  enum class Op : std::uint8_t { Init, Copy, Set };
  Op op = Op::Init;
  int bank = 0;
  int src = 0;            // Copy
  int slot = 0;           // Set
  Position offset = 0;    // Set: written value is base + offset

  static MemoryOp init(int bank) { return {Op::Init, bank, 0, 0, 0}; }
  static MemoryOp copy(int dst, int src) { return {Op::Copy, dst, src, 0, 0}; }
  static MemoryOp set(int bank, int slot, Position offset) { return {Op::Set, bank, 0, slot, offset}; }
  bool operator==(const MemoryOp&) const = default;
};

std::string to_string(const MemoryOp& op);
std::string to_string(const std::vector<MemoryOp>& ops);

void execute(const std::vector<MemoryOp>& ops, Store& store, Position base, int slots);

// Compares two slot vectors under the table's priority order. Positive when
// a is preferred, negative when b is, zero on a tie.
int bank_compare(const std::vector<Position>& a, const std::vector<Position>& b, const TagTable& tags);

// How the ε-paths through a star or a nullable prefix are represented.
// Collapse folds all of them into one write list, as the rewrite rules read
// literally; Distribute keeps each path as its own alternative so that a
// path that skips a tag does not inherit writes from one that crosses it.
enum class TevalMode : std::uint8_t { Distribute, Collapse };

LinearForm teval_body(const Regex& body, Position p, TevalMode mode);
Regex teval(const Regex& r, Position p, int& next_bank, TevalMode mode = TevalMode::Distribute);
Regex teval(const Regex& r, Position p, TevalMode mode = TevalMode::Distribute);

// The contents a term would have once its pending writes are applied.
std::vector<Position> term_contents(const Regex& term, const Store& store, int slots);

struct Disambiguated {
  Regex regex;
  std::vector<MemoryOp> ops;  // Set offsets are relative to base
};

// Keeps, among the terms with equal bodies, the one whose memory ranks
// highest; then materialises the survivors' pending writes as memory ops.
Disambiguated disambiguate(const Regex& r, const TagTable& tags, const Store& store, Position base);

// Renumbers the banks of r to 1..m in term order.
Regex compact(const Regex& r);

// Rewrites ops, which produce the memory layout of d, into a parallel
// assignment producing the layout of dbar, which must equal d up to banks.
std::vector<MemoryOp> rearrange_memory(const Regex& d, const Regex& dbar, const std::vector<MemoryOp>& ops);

// One transition of the tagged matcher on a compacted state.
struct MemoryStep {
  Regex state;
  std::vector<MemoryOp> ops;  // relative to the position of the consumed symbol
};

MemoryStep start_state(const Regex& body, const TagTable& tags, TevalMode mode);
MemoryStep step(const Regex& state, Symbol c, Position p, const TagTable& tags, const Store& store, TevalMode mode);

struct Final {
  bool matched = false;
  int bank = 0;
  std::vector<MemoryOp> ops;  // relative to the end of the stream
};

Final finalize(const Regex& state, const TagTable& tags, const Store& store, Position p);

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct MatchResult {
  bool matched = false;
  std::vector<Position> bank;                // winning slots, stream positions
  std::vector<std::optional<Span>> groups;  // index 0 is the whole match
  std::size_t stream_length = 0;
};

// origin_map translates stream positions into text offsets; an empty map
// keeps stream positions.
MatchResult extract_submatches(const std::vector<Position>& slots, const TagTable& tags,
                               const std::vector<std::size_t>& origin_map, std::size_t stream_length);

enum class MatchMode : std::uint8_t { Whole, Prefix, Search, Raw };

struct Program {
  Regex body;
  TagTable tags;
  MatchMode mode = MatchMode::Whole;
};

// Wraps a parsed pattern in whole-match tags and the padding its mode needs.
Program prepare(const Parsed& parsed, MatchMode mode);

const char* mode_name(MatchMode m);
std::optional<MatchMode> mode_from_name(const std::string& name);

std::string to_json(const MatchResult& m);

}  // namespace drx
