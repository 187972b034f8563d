#pragma once

#include <utility>
#include <vector>

#include "expr.h"

namespace drx {

// One alternative of a derivative or tag evaluation: the slot writes made
// along the way and the expression left to match. Bodies never contain
// bank heads; the writes are attached to the enclosing term's bank.
struct Alt {
  Updates updates;
  Regex body;
};
using LinearForm = std::vector<Alt>;

// Unions the bodies of alternatives that carry the same writes and drops ∅
// bodies. Order is preserved by first occurrence.
LinearForm merge(LinearForm form);

// Derivative of a tag-free reading of r: tags denote ε, banks are dropped.
Regex derive_plain(const Regex& r, Symbol b);

// Derivative of a bank-free expression with memory, at stream position p.
LinearForm derive_body(const Regex& body, Symbol b, Position p);

// Every way the empty string can be matched by body, as the writes made by
// the tags crossed on that path. Empty when body is not nullable.
std::vector<Updates> null_alts(const Regex& body, Position p);

struct NullifyResult {
  enum class Kind { NotNullable, NullablePlain, NullableWithMemory } kind = Kind::NotNullable;
  std::vector<std::pair<int, Updates>> banks;  // (bank id, pending writes)
};

NullifyResult nullify(const Regex& r, Position p);

// Derivative of a full expression. Bank-headed terms distribute over the
// alternatives of their body's derivative: the first keeps the bank, each
// later one receives next_bank++. Without a counter, allocation starts
// right after the largest bank id in r.
Regex derive(const Regex& r, Symbol b, Position p, int& next_bank);
Regex derive(const Regex& r, Symbol b, Position p = 0);
Regex derive_string(const Regex& r, const std::vector<Symbol>& s, Position start = 0);

// A partition of the working alphabet into disjoint non-empty blocks.
using SymbolPartition = std::vector<SymbolSet>;

// Pairwise-intersection refinement of two partitions.
SymbolPartition refine(const SymbolPartition& a, const SymbolPartition& b);

// An over-approximation of the derivative classes of r: symbols in one
// block always produce the same derivative. Blocks are sorted.
SymbolPartition derivative_classes(const Regex& r);

}  // namespace drx
