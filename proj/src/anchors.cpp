#include "anchors.h"

namespace drx {

bool is_word_symbol(Symbol s) {
  return (s >= 'a' && s <= 'z') || (s >= 'A' && s <= 'Z') || (s >= '0' && s <= '9') || s == '_';
}

namespace {

AnchoredStream inject(const std::vector<Symbol>& text, const std::vector<std::size_t>& offsets,
                      const WordPredicate& word) {
  AnchoredStream out;
  const std::size_t n = text.size();
  auto put = [&](Symbol s, std::size_t at) {
    out.symbols.push_back(s);
    out.origin_map.push_back(at);
  };
  for (std::size_t i = 0; i <= n; ++i) {
    std::size_t at = offsets[i];
    bool prev_word = i > 0 && word(text[i - 1]);
    bool next_word = i < n && word(text[i]);
    if (i == 0) put(anchor_symbol(Anchor::Bot), at);
    if (i == 0 || text[i - 1] == '\n') put(anchor_symbol(Anchor::Bol), at);
    if (prev_word && !next_word) put(anchor_symbol(Anchor::Eow), at);
    if (next_word && !prev_word) put(anchor_symbol(Anchor::Bow), at);
    if (i == n || text[i] == '\n') put(anchor_symbol(Anchor::Eol), at);
    if (i == n) put(anchor_symbol(Anchor::Eot), at);
    if (i < n) put(text[i], at);
  }
  out.origin_map.push_back(offsets[n]);
  return out;
}

}  // namespace

AnchoredStream inject_anchors(const std::string& text, const WordPredicate& word) {
  std::vector<std::size_t> offsets;
  std::vector<Symbol> syms = decode_utf8(text, &offsets);
  offsets.push_back(text.size());
  return inject(syms, offsets, word);
}

AnchoredStream inject_anchors(const std::vector<Symbol>& text, const WordPredicate& word) {
  std::vector<std::size_t> offsets(text.size() + 1);
  for (std::size_t i = 0; i < offsets.size(); ++i) offsets[i] = i;
  return inject(text, offsets, word);
}

AnchoredStream raw_stream(const std::string& text) {
  AnchoredStream out;
  out.symbols = decode_utf8(text, &out.origin_map);
  out.origin_map.push_back(text.size());
  return out;
}

std::vector<Symbol> strip_anchors(const std::vector<Symbol>& stream) {
  std::vector<Symbol> out;
  for (Symbol s : stream)
    if (!is_anchor(s)) out.push_back(s);
  return out;
}

std::string stream_text(const std::vector<Symbol>& stream) {
  std::string out;
  for (Symbol s : stream) {
    if (is_anchor(s))
      out += anchor_glyph(static_cast<Anchor>(s - kAnchorBase));
    else
      append_utf8(out, s);
  }
  return out;
}

Regex anchor_star() { return mk_any_star(); }

Regex exactly_symbol(Symbol a) {
  Regex other = mk_class(SymbolSet::universe().minus(SymbolSet::of(a)));
  return mk_inter(mk_comp(mk_concat(other, anchor_star())), mk_symbol(a, true));
}

Regex forbid_anchor_prefix(const Regex& r) {
  return mk_inter(mk_comp(mk_concat(mk_class(SymbolSet::anchors(kAllAnchors)), anchor_star())), r);
}

namespace {

Regex word_boundary() {
  // An ordinary atom, so the other anchors may come first.
  return mk_class(SymbolSet::anchors(anchor_bit(Anchor::Bow) | anchor_bit(Anchor::Eow)), true);
}

}  // namespace

Regex forbid_word_boundary(const Regex& r) {
  return mk_inter(mk_comp(mk_concat(word_boundary(), anchor_star())), r);
}

Regex require_word_boundary_between(const Regex& s, const Regex& t) { return mk_concat({s, word_boundary(), t}); }

}  // namespace drx
