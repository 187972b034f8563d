#pragma once

#include <functional>
#include <string>
#include <vector>

#include "expr.h"

namespace drx {

using WordPredicate = std::function<bool(Symbol)>;

// ASCII letters, digits and underscore.
bool is_word_symbol(Symbol s);

struct AnchoredStream {
  std::vector<Symbol> symbols;
  // origin_map[i] is the text offset of stream position i; it has one
  // entry more than symbols, for the end of the stream.
  std::vector<std::size_t> origin_map;
};

// Makes anchors explicit. Anchors sharing a boundary come out as ⊥ ≺ ⟩ ⟨ ≻ ⊢
// (⟩ and ⟨ never share one). Offsets are bytes for UTF-8 text and symbol
// indices for symbol input.
AnchoredStream inject_anchors(const std::string& text, const WordPredicate& word = is_word_symbol);
AnchoredStream inject_anchors(const std::vector<Symbol>& text, const WordPredicate& word = is_word_symbol);

// The same text without anchors, offsets as above.
AnchoredStream raw_stream(const std::string& text);

std::vector<Symbol> strip_anchors(const std::vector<Symbol>& stream);

// Display form of a stream, anchors as glyphs.
std::string stream_text(const std::vector<Symbol>& stream);

// A†*: any sequence of anchors.
Regex anchor_star();
// ~(Ā·A†*) & a: exactly the one-symbol string a, no anchor may precede it.
Regex exactly_symbol(Symbol a);
// ~(B·A†*) & r
Regex forbid_anchor_prefix(const Regex& r);
// ~([⟨⟩]·A†*) & r
Regex forbid_word_boundary(const Regex& r);
// s·[⟨⟩]·t
Regex require_word_boundary_between(const Regex& s, const Regex& t);

}  // namespace drx
