#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "engine.h"

namespace drx {

inline constexpr std::size_t kDefaultStateBound = 100000;

struct StateBoundError : std::runtime_error {
  explicit StateBoundError(std::size_t b)
      : std::runtime_error("state bound of " + std::to_string(b) + " exceeded"), bound(b) {}
  std::size_t bound;
};

struct AlphabetError : std::runtime_error {
  explicit AlphabetError(Symbol s) : std::runtime_error("symbol " + symbol_text(s) + " is outside the alphabet") {}
};

struct Edge {
  SymbolSet label;
  int target = 0;
  std::vector<MemoryOp> ops;
};

struct Dfa {
  Alphabet alphabet;
  std::vector<Regex> states;  // state 0 is initial
  std::vector<bool> accepting;
  std::vector<std::vector<Edge>> edges;

  int size() const { return static_cast<int>(states.size()); }
  // The edge taken from q on s, or nullptr when s is outside the alphabet.
  const Edge* edge(int q, Symbol s) const;
};

struct TaggedDfa : Dfa {
  TagTable tags;
  TevalMode teval = TevalMode::Distribute;
  std::vector<MemoryOp> initial;
  std::vector<int> result_bank;  // 0 for non-accepting states
  std::vector<std::vector<MemoryOp>> final_ops;
  int bank_count = 0;
};

Dfa make_dfa(const Regex& r, const Alphabet& alphabet, std::size_t bound = kDefaultStateBound);
TaggedDfa make_tagged_dfa(const Regex& body, const TagTable& tags, const Alphabet& alphabet,
                          TevalMode mode = TevalMode::Distribute, std::size_t bound = kDefaultStateBound);

bool dfa_match(const Dfa& m, const std::vector<Symbol>& s);
bool dfa_match(const Dfa& m, const std::string& text);

MatchResult tagged_dfa_run(const TaggedDfa& m, const AnchoredStream& stream, bool stream_offsets = false);
MatchResult tagged_dfa_match(const TaggedDfa& m, const std::string& text, const MatchOptions& opt = {});

// Solves the characteristic equations, eliminating the highest state first.
Regex dfa_to_regex(const Dfa& m);

// Pairs of distinct states with equal languages; empty iff m is minimal.
std::vector<std::pair<int, int>> check_minimal(const Dfa& m);

std::string to_dot(const Dfa& m);
std::string to_dot(const TaggedDfa& m);
std::string to_json(const Dfa& m);
std::string to_json(const TaggedDfa& m);

}  // namespace drx
