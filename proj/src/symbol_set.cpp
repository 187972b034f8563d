#include "symbol_set.h"

#include <algorithm>
#include <cstdio>

namespace drx {

SymbolSet SymbolSet::of(Symbol s) {
  SymbolSet r;
  if (is_anchor(s))
    r.anchors_ = static_cast<std::uint8_t>(1u << (s - kAnchorBase));
  else
    r.ranges_.push_back({s, s});
  return r;
}

SymbolSet SymbolSet::range(Symbol lo, Symbol hi) {
  SymbolSet r;
  if (lo <= hi) r.ranges_.push_back({lo, std::min(hi, kMaxCodepoint)});
  return r;
}

SymbolSet SymbolSet::chars(const std::string& ascii) {
  SymbolSet r;
  for (unsigned char c : ascii) r.ranges_.push_back({c, c});
  r.normalize();
  return r;
}

SymbolSet SymbolSet::anchors(std::uint8_t mask) {
  SymbolSet r;
  r.anchors_ = mask & kAllAnchors;
  return r;
}

SymbolSet SymbolSet::all_base() { return range(0, kMaxCodepoint); }
SymbolSet SymbolSet::ascii() { return range(0, 127); }

SymbolSet SymbolSet::universe() {
  SymbolSet r = all_base();
  r.anchors_ = kAllAnchors;
  return r;
}

bool SymbolSet::contains(Symbol s) const {
  if (is_anchor(s)) return (anchors_ >> (s - kAnchorBase)) & 1u;
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), s,
                             [](Symbol v, const Range& r) { return v < r.lo; });
  if (it == ranges_.begin()) return false;
  --it;
  return s <= it->hi;
}

void SymbolSet::normalize() {
  std::sort(ranges_.begin(), ranges_.end(),
            [](const Range& a, const Range& b) { return a.lo < b.lo; });
  std::vector<Range> out;
  for (const Range& r : ranges_) {
    if (!out.empty() && r.lo <= out.back().hi + 1)
      out.back().hi = std::max(out.back().hi, r.hi);
    else
      out.push_back(r);
  }
  ranges_ = std::move(out);
}

SymbolSet SymbolSet::operator|(const SymbolSet& o) const {
  SymbolSet r;
  r.ranges_ = ranges_;
  r.ranges_.insert(r.ranges_.end(), o.ranges_.begin(), o.ranges_.end());
  r.anchors_ = anchors_ | o.anchors_;
  r.normalize();
  return r;
}

SymbolSet SymbolSet::operator&(const SymbolSet& o) const {
  SymbolSet r;
  r.anchors_ = anchors_ & o.anchors_;
  std::size_t i = 0, j = 0;
  while (i < ranges_.size() && j < o.ranges_.size()) {
    Symbol lo = std::max(ranges_[i].lo, o.ranges_[j].lo);
    Symbol hi = std::min(ranges_[i].hi, o.ranges_[j].hi);
    if (lo <= hi) r.ranges_.push_back({lo, hi});
    if (ranges_[i].hi < o.ranges_[j].hi)
      ++i;
    else
      ++j;
  }
  return r;
}

SymbolSet SymbolSet::minus(const SymbolSet& o) const {
  SymbolSet r;
  r.anchors_ = anchors_ & static_cast<std::uint8_t>(~o.anchors_);
  std::size_t j = 0;
  for (Range cur : ranges_) {
    while (j < o.ranges_.size() && o.ranges_[j].hi < cur.lo) ++j;
    std::size_t k = j;
    bool alive = true;
    while (k < o.ranges_.size() && o.ranges_[k].lo <= cur.hi) {
      const Range& cut = o.ranges_[k];
      if (cut.lo > cur.lo) r.ranges_.push_back({cur.lo, cut.lo - 1});
      if (cut.hi >= cur.hi) {
        alive = false;
        break;
      }
      cur.lo = cut.hi + 1;
      ++k;
    }
    if (alive) r.ranges_.push_back(cur);
  }
  return r;
}

SymbolSet SymbolSet::base_part() const {
  SymbolSet r;
  r.ranges_ = ranges_;
  return r;
}

Symbol SymbolSet::first() const {
  if (!ranges_.empty()) return ranges_.front().lo;
  for (int i = 0; i < kAnchorCount; ++i)
    if ((anchors_ >> i) & 1u) return kAnchorBase + static_cast<Symbol>(i);
  return 0;
}

std::uint64_t SymbolSet::count() const {
  std::uint64_t n = 0;
  for (const Range& r : ranges_) n += static_cast<std::uint64_t>(r.hi) - r.lo + 1;
  for (int i = 0; i < kAnchorCount; ++i) n += (anchors_ >> i) & 1u;
  return n;
}

std::vector<Symbol> SymbolSet::members() const {
  std::vector<Symbol> out;
  for (const Range& r : ranges_)
    for (Symbol s = r.lo;; ++s) {
      out.push_back(s);
      if (s == r.hi) break;
    }
  for (int i = 0; i < kAnchorCount; ++i)
    if ((anchors_ >> i) & 1u) out.push_back(kAnchorBase + static_cast<Symbol>(i));
  return out;
}

std::size_t SymbolSet::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ anchors_;
  for (const Range& r : ranges_) {
    h ^= (static_cast<std::size_t>(r.lo) << 21) ^ r.hi;
    h *= 0x100000001b3ull;
  }
  return h;
}

int SymbolSet::compare(const SymbolSet& o) const {
  std::size_t n = std::min(ranges_.size(), o.ranges_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ranges_[i].lo != o.ranges_[i].lo) return ranges_[i].lo < o.ranges_[i].lo ? -1 : 1;
    if (ranges_[i].hi != o.ranges_[i].hi) return ranges_[i].hi < o.ranges_[i].hi ? -1 : 1;
  }
  if (ranges_.size() != o.ranges_.size()) return ranges_.size() < o.ranges_.size() ? -1 : 1;
  if (anchors_ != o.anchors_) return anchors_ < o.anchors_ ? -1 : 1;
  return 0;
}

std::string anchor_text(Anchor a) {
  switch (a) {
    case Anchor::Bot: return "\\A";
    case Anchor::Bol: return "^";
    case Anchor::Bow: return "\\<";
    case Anchor::Eow: return "\\>";
    case Anchor::Eol: return "$";
    case Anchor::Eot: return "\\z";
  }
  return "?";
}

std::string anchor_glyph(Anchor a) {
  switch (a) {
    case Anchor::Bot: return "⊥";
    case Anchor::Bol: return "≺";
    case Anchor::Bow: return "⟨";
    case Anchor::Eow: return "⟩";
    case Anchor::Eol: return "≻";
    case Anchor::Eot: return "⊢";
  }
  return "?";
}

namespace {

std::string literal_text(Symbol s, bool in_class) {
  if (is_anchor(s)) return anchor_text(static_cast<Anchor>(s - kAnchorBase));
  switch (s) {
    case '\n': return "\\n";
    case '\t': return "\\t";
    default: break;
  }
  static const std::string specials = "\\+*()[]&~.^$";
  if (s < 0x80) {
    char c = static_cast<char>(s);
    if (in_class ? (c == ']' || c == '\\' || c == '-' || c == '^' || c == '$')
                 : specials.find(c) != std::string::npos)
      return std::string("\\") + c;
    if (s < 0x20 || s == 0x7f) {
      static const char* hex = "0123456789abcdef";
      return std::string("\\x") + hex[s >> 4] + hex[s & 15];
    }
    return std::string(1, c);
  }
  if (s < 0xA0 || (s >= 0xD800 && s < 0xF900) || s > 0xFFFF) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "\\x{%x}", static_cast<unsigned>(s));
    return buf;
  }
  std::string out;
  append_utf8(out, s);
  return out;
}

std::string ranges_text(const std::vector<Range>& ranges) {
  std::string out;
  for (const Range& r : ranges) {
    out += literal_text(r.lo, true);
    if (r.hi == r.lo) continue;
    if (r.hi > r.lo + 1) out += '-';
    out += literal_text(r.hi, true);
  }
  return out;
}

}  // namespace

std::string symbol_text(Symbol s) { return literal_text(s, false); }

std::string to_string(const SymbolSet& s) {
  if (s.empty()) return "[]";
  if (s == SymbolSet::all_base()) return ".";
  if (s.count() == 1) return literal_text(s.first(), false);
  std::string anchors;
  for (int i = 0; i < kAnchorCount; ++i)
    if ((s.anchor_mask() >> i) & 1u) anchors += anchor_text(static_cast<Anchor>(i));
  SymbolSet base = s.base_part();
  if (base == SymbolSet::all_base()) return ".∪[" + anchors + "]";
  // Sets reaching both ends of the code point range read better negated.
  if (!base.empty() && base.first() == 0 && base.ranges().back().hi == kMaxCodepoint && base != SymbolSet::all_base()) {
    std::string out = "[^" + ranges_text(SymbolSet::all_base().minus(base).ranges()) + "]";
    if (!anchors.empty()) out += "∪[" + anchors + "]";
    return out;
  }
  std::string out = "[" + ranges_text(s.ranges());
  for (int i = 0; i < kAnchorCount; ++i)
    if ((s.anchor_mask() >> i) & 1u) out += anchor_text(static_cast<Anchor>(i));
  out += ']';
  return out;
}

void append_utf8(std::string& out, Symbol cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::vector<Symbol> decode_utf8(const std::string& text, std::vector<std::size_t>* offsets) {
  std::vector<Symbol> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (offsets) offsets->push_back(i);
    unsigned char c = static_cast<unsigned char>(text[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : (c >> 3) == 30 ? 4 : 0;
    Symbol cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    bool ok = len > 0 && i + len <= text.size();
    for (int k = 1; ok && k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc >> 6) != 2) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok || cp > kMaxCodepoint) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

}  // namespace drx
