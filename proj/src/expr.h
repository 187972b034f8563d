#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symbol_set.h"

namespace drx {

// Stream positions. Slots that have not been written hold kUnset.
using Position = std::int64_t;
inline constexpr Position kUnset = -1;

enum class TagKind : std::uint8_t { Early, Late };

struct SlotUpdate {
  int slot;
  Position value;
  bool operator==(const SlotUpdate&) const = default;
};

// A pending write list: sorted by slot, at most one entry per slot.
using Updates = std::vector<SlotUpdate>;

// Applies `then` after `first`; later writes win.
Updates compose(const Updates& first, const Updates& then);
Updates with_update(const Updates& u, int slot, Position value);
int compare_updates(const Updates& a, const Updates& b);

enum class Kind : std::uint8_t { Empty, Eps, Class, Tag, Star, Concat, Union, Inter, Comp, Bank };

struct Node;
using Regex = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::Empty;

  // Class
  SymbolSet set;
  bool transparent = false;  // denotes (complement(set) & anchors)* set

  // Tag
  TagKind tag_kind = TagKind::Early;
  int tag = -1;

  // Bank head: `bank` is this term's identity, `origin` the bank of the
  // previous expression it was copied from, `pending` the writes made since.
  int bank = 0;
  int origin = 0;
  Updates pending;

  std::vector<Regex> kids;

  // Cached on construction.
  std::size_t hash = 0;  // ignores bank identities and pending writes
  bool nullable = false;
  bool tagged = false;
  bool banked = false;
  std::uint32_t size = 1;
};

// Smart constructors. Every result is canonical: the similarity identities
// have been applied and Union/Inter operands are flattened and ordered.
Regex mk_empty();
Regex mk_eps();
Regex mk_class(const SymbolSet& set, bool transparent = false);
Regex mk_symbol(Symbol s, bool transparent = false);
Regex mk_tag(TagKind kind, int id);
Regex mk_star(const Regex& r);
Regex mk_concat(const Regex& l, const Regex& r);
Regex mk_concat(const std::vector<Regex>& parts);
Regex mk_union(const Regex& a, const Regex& b);
Regex mk_union(std::vector<Regex> terms);
Regex mk_inter(const Regex& a, const Regex& b);
Regex mk_inter(std::vector<Regex> terms);
Regex mk_comp(const Regex& r);
Regex mk_bank(int bank, int origin, Updates pending, const Regex& body);
Regex mk_bank(int bank, const Regex& body);
// ~∅, the language of every string over the working alphabet.
Regex mk_any_star();

// Total order used for canonical operand order. Bank identities and pending
// writes compare equal.
int compare(const Regex& a, const Regex& b);
// Structural equality including bank identities and pending writes.
bool identical(const Regex& a, const Regex& b);

struct BankPairing {
  bool equal = false;
  std::vector<std::pair<int, int>> pairs;  // (bank in first, bank in second)
};

// Equality after erasing bank identities and pending writes; on success the
// banks are paired up positionally.
BankPairing equal_mod_banks(const Regex& a, const Regex& b);

// The top-level terms of a sum-of-terms expression: ∅ has none, a single
// term is its own list, a union lists its operands.
std::vector<Regex> terms_of(const Regex& r);
// Largest bank id referenced anywhere in r (0 when there is none).
int max_bank(const Regex& r);
// Removes every tag, bank head and pending write.
Regex erase_tags(const Regex& r);
// Tag ids occurring in r, ascending.
std::vector<int> tags_in(const Regex& r);

std::string to_string(const Regex& r);

struct RegexHash {
  std::size_t operator()(const Regex& r) const { return r->hash; }
};
struct RegexEqual {
  bool operator()(const Regex& a, const Regex& b) const { return identical(a, b); }
};

}  // namespace drx
