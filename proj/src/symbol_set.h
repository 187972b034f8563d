#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace drx {

// Symbols are Unicode scalar values; the six anchors live just past the
// Unicode range so that one integer type covers the whole working alphabet.
using Symbol = std::uint32_t;

inline constexpr Symbol kMaxCodepoint = 0x10FFFF;
inline constexpr Symbol kAnchorBase = 0x110000;
inline constexpr int kAnchorCount = 6;
inline constexpr std::uint8_t kAllAnchors = 0x3F;

enum class Anchor : std::uint8_t { Bot = 0, Bol, Bow, Eow, Eol, Eot };

constexpr Symbol anchor_symbol(Anchor a) { return kAnchorBase + static_cast<Symbol>(a); }
constexpr bool is_anchor(Symbol s) { return s >= kAnchorBase && s < kAnchorBase + kAnchorCount; }
constexpr std::uint8_t anchor_bit(Anchor a) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(a)); }

struct Range {
  Symbol lo;
  Symbol hi;  // inclusive
  bool operator==(const Range&) const = default;
};

// A set of symbols: sorted disjoint inclusive code point ranges plus a
// membership mask for the anchors.
class SymbolSet {
 public:
  SymbolSet() = default;

  static SymbolSet of(Symbol s);
  static SymbolSet range(Symbol lo, Symbol hi);
  static SymbolSet chars(const std::string& ascii);
  static SymbolSet anchors(std::uint8_t mask);
  static SymbolSet all_base();
  static SymbolSet ascii();
  static SymbolSet universe();

  bool empty() const { return ranges_.empty() && anchors_ == 0; }
  bool contains(Symbol s) const;
  bool subset_of(const SymbolSet& o) const { return minus(o).empty(); }

  SymbolSet operator|(const SymbolSet& o) const;
  SymbolSet operator&(const SymbolSet& o) const;
  SymbolSet minus(const SymbolSet& o) const;

  SymbolSet base_part() const;
  SymbolSet anchor_part() const { return anchors(anchors_); }

  // Smallest member; the set must not be empty.
  Symbol first() const;
  // Number of members.
  std::uint64_t count() const;
  // Every member in increasing order. Only sensible for small sets.
  std::vector<Symbol> members() const;

  const std::vector<Range>& ranges() const { return ranges_; }
  std::uint8_t anchor_mask() const { return anchors_; }

  std::size_t hash() const;
  int compare(const SymbolSet& o) const;
  bool operator==(const SymbolSet& o) const { return anchors_ == o.anchors_ && ranges_ == o.ranges_; }
  bool operator<(const SymbolSet& o) const { return compare(o) < 0; }

 private:
  void normalize();

  std::vector<Range> ranges_;
  std::uint8_t anchors_ = 0;
};

// The working alphabet is just a symbol set; these are the usual ones.
using Alphabet = SymbolSet;

inline Alphabet unicode_alphabet(bool with_anchors) {
  return with_anchors ? SymbolSet::universe() : SymbolSet::all_base();
}
inline Alphabet ascii_alphabet(bool with_anchors) {
  return with_anchors ? SymbolSet::ascii() | SymbolSet::anchors(kAllAnchors) : SymbolSet::ascii();
}

std::string anchor_text(Anchor a);       // escape form used by the parser, e.g. "\\<"
std::string anchor_glyph(Anchor a);      // display form, e.g. "⟨"
std::string symbol_text(Symbol s);       // printable rendering of one symbol
std::string to_string(const SymbolSet& s);

void append_utf8(std::string& out, Symbol cp);
// Decodes UTF-8; malformed bytes decode to U+FFFD one byte at a time.
// When offsets is given it receives the byte offset of every decoded symbol.
std::vector<Symbol> decode_utf8(const std::string& text, std::vector<std::size_t>* offsets = nullptr);

}  // namespace drx
