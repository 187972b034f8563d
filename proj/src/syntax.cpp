#include "syntax.h"

#include <algorithm>
#include <numeric>

namespace drx {

std::optional<std::pair<int, int>> TagTable::group_tags(int g) const {
  int open = -1, close = -1;
  for (int i = 0; i < size(); ++i) {
    const TagInfo& t = entries[static_cast<std::size_t>(i)];
    if (t.group != g) continue;
    if (g == 0 && t.source != TagSource::WholeMatch) continue;
    if (g > 0 && t.source != TagSource::UserGroup) continue;
    (t.opening ? open : close) = i;
  }
  if (open < 0 || close < 0) return std::nullopt;
  return std::make_pair(open, close);
}

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Posix: return "posix";
    case Policy::PreOrder: return "preorder";
    case Policy::PostOrder: return "postorder";
  }
  return "?";
}

std::optional<Policy> policy_from_name(const std::string& name) {
  if (name == "posix") return Policy::Posix;
  if (name == "preorder" || name == "pre-order") return Policy::PreOrder;
  if (name == "postorder" || name == "post-order") return Policy::PostOrder;
  return std::nullopt;
}

Regex remap_tags(const Regex& r, const std::vector<int>& map) {
  if (!r->tagged) return r;
  switch (r->kind) {
    case Kind::Tag: return mk_tag(r->tag_kind, map[static_cast<std::size_t>(r->tag)]);
    case Kind::Star: return mk_star(remap_tags(r->kids[0], map));
    case Kind::Comp: return mk_comp(remap_tags(r->kids[0], map));
    case Kind::Concat: return mk_concat(remap_tags(r->kids[0], map), remap_tags(r->kids[1], map));
    case Kind::Bank: {
      Updates p;
      for (const SlotUpdate& u : r->pending) p = with_update(p, map[static_cast<std::size_t>(u.slot)], u.value);
      return mk_bank(r->bank, r->origin, p, remap_tags(r->kids[0], map));
    }
    case Kind::Union:
    case Kind::Inter: {
      std::vector<Regex> kids;
      for (const Regex& k : r->kids) kids.push_back(remap_tags(k, map));
      return r->kind == Kind::Union ? mk_union(std::move(kids)) : mk_inter(std::move(kids));
    }
    default: return r;
  }
}

namespace {

struct Pair {
  std::size_t start;
  std::size_t end;
  bool inserted;
  bool lazy;
  int group;
};

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opt) : opt_(opt) {
    syms_ = decode_utf8(text, &offsets_);
    offsets_.push_back(text.size());
  }

  Parsed run() {
    Regex r = disj();
    if (!done()) {
      if (peek() == ')') fail("unbalanced ')'");
      fail("unexpected character");
    }
    return {renumber(r), table_};
  }

 private:
  bool done() const { return pos_ >= syms_.size(); }
  Symbol peek(std::size_t ahead = 0) const { return pos_ + ahead < syms_.size() ? syms_[pos_ + ahead] : 0; }
  bool at(char c) const { return !done() && peek() == static_cast<Symbol>(static_cast<unsigned char>(c)); }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(offsets_[std::min(pos_, syms_.size())], what); }

  SymbolSet base() const { return opt_.ascii ? SymbolSet::ascii() : SymbolSet::all_base(); }

  Regex disj() {
    std::vector<Regex> alts{conj()};
    while (at('+')) {
      ++pos_;
      alts.push_back(conj());
    }
    return mk_union(std::move(alts));
  }

  Regex conj() {
    std::vector<Regex> parts{seq()};
    while (at('&')) {
      ++pos_;
      parts.push_back(seq());
    }
    return mk_inter(std::move(parts));
  }

  Regex seq() {
    std::vector<Regex> parts;
    while (!done() && !at('+') && !at('&') && !at(')')) parts.push_back(clos());
    return mk_concat(parts);
  }

  Regex clos() {
    if (at('~')) {
      ++pos_;
      if (done() || at('+') || at('&') || at(')')) fail("'~' needs an operand");
      return mk_comp(clos());
    }
    std::size_t start = pos_;
    if (at('*')) fail("nothing to repeat");
    Regex r = atom();
    bool starred = false;
    while (at('*')) {
      ++pos_;
      starred = true;
    }
    if (!starred) return r;
    r = mk_star(r);
    if (opt_.subpattern_tags) r = tagged(r, start, pos_, true, false, -1);
    return r;
  }

  Regex tagged(const Regex& body, std::size_t start, std::size_t end, bool inserted, bool lazy, int group) {
    int k = static_cast<int>(pairs_.size());
    pairs_.push_back({start, end, inserted, lazy, group});
    return mk_concat(
        {mk_tag(TagKind::Early, 2 * k), body, mk_tag(lazy ? TagKind::Early : TagKind::Late, 2 * k + 1)});
  }

  Regex atom() {
    std::size_t start = pos_;
    Symbol c = peek();
    switch (c) {
      case '(': {
        ++pos_;
        int mode = 0;  // 0 capture, 1 lazy capture, 2 plain grouping
        if (at('?')) {
          if (peek(1) == 'l') {
            mode = 1;
          } else if (peek(1) == ':') {
            mode = 2;
          } else {
            ++pos_;
            fail("unknown group flag");
          }
          pos_ += 2;
        }
        int group = mode == 2 ? -1 : ++groups_;
        Regex inner = disj();
        if (!at(')')) fail("unbalanced '('");
        ++pos_;
        if (mode == 2) return inner;
        return tagged(inner, start, pos_, false, mode == 1, group);
      }
      case '[': return klass();
      case '.': ++pos_; return mk_class(base(), true);
      case '^': ++pos_; return mk_symbol(anchor_symbol(Anchor::Bol), true);
      case '$': ++pos_; return mk_symbol(anchor_symbol(Anchor::Eol), true);
      case ']': fail("unbalanced ']'");
      case '\\': {
        ++pos_;
        if (done()) fail("trailing backslash");
        Symbol e = peek();
        ++pos_;
        if (e == 'e') return mk_eps();
        if (e == '0') return mk_empty();
        auto sym = escape(e);
        if (!sym) {
          --pos_;
          fail("unknown escape");
        }
        return mk_symbol(*sym, true);
      }
      default: ++pos_; return mk_symbol(c, true);
    }
  }

  std::optional<Symbol> escape(Symbol e) const {
    switch (e) {
      case '\\': case '+': case '*': case '(': case ')': case '[': case ']':
      case '&': case '~': case '.': case '^': case '$': case '-': case '?':
        return e;
      case 'n': return '\n';
      case 't': return '\t';
      case 'A': return anchor_symbol(Anchor::Bot);
      case '<': return anchor_symbol(Anchor::Bow);
      case '>': return anchor_symbol(Anchor::Eow);
      case 'z': return anchor_symbol(Anchor::Eot);
      default: return std::nullopt;
    }
  }

  Symbol class_symbol() {
    if (done()) fail("unterminated class");
    Symbol c = peek();
    ++pos_;
    if (c != '\\') return c;
    if (done()) fail("unterminated class");
    auto sym = escape(peek());
    if (!sym) fail("unknown escape");
    ++pos_;
    return *sym;
  }

  Regex klass() {
    ++pos_;
    bool negate = false;
    if (at('^')) {
      negate = true;
      ++pos_;
    }
    SymbolSet set;
    while (!at(']')) {
      std::size_t item = pos_;
      Symbol lo = class_symbol();
      if (at('-') && peek(1) != ']' && pos_ + 1 < syms_.size()) {
        ++pos_;
        Symbol hi = class_symbol();
        if (is_anchor(lo) || is_anchor(hi)) {
          pos_ = item;
          fail("anchor in class range");
        }
        if (hi < lo) {
          pos_ = item;
          fail("reversed class range");
        }
        set = set | SymbolSet::range(lo, hi);
      } else {
        set = set | SymbolSet::of(lo);
      }
    }
    ++pos_;
    if (negate) set = base().minus(set);
    return mk_class(set, true);
  }

  // Tag ids follow the policy's enumeration: pairs counted by opening
  // bracket for POSIX and pre-order, by closing bracket for post-order.
  Regex renumber(const Regex& r) {
    std::vector<int> idx(pairs_.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto by_open = [&](int a, int b) {
      const Pair& x = pairs_[static_cast<std::size_t>(a)];
      const Pair& y = pairs_[static_cast<std::size_t>(b)];
      if (x.start != y.start) return x.start < y.start;
      if (x.inserted != y.inserted) return x.inserted;
      return x.end > y.end;
    };
    auto by_close = [&](int a, int b) {
      const Pair& x = pairs_[static_cast<std::size_t>(a)];
      const Pair& y = pairs_[static_cast<std::size_t>(b)];
      if (x.end != y.end) return x.end < y.end;
      return x.start > y.start;
    };
    std::vector<int> closing = idx;
    std::stable_sort(closing.begin(), closing.end(), by_close);
    if (opt_.policy == Policy::PostOrder)
      idx = closing;
    else
      std::stable_sort(idx.begin(), idx.end(), by_open);

    std::vector<int> map(2 * pairs_.size());
    table_.entries.resize(2 * pairs_.size());
    for (std::size_t rank = 0; rank < idx.size(); ++rank) {
      const Pair& p = pairs_[static_cast<std::size_t>(idx[rank])];
      int open = static_cast<int>(2 * rank), close = open + 1;
      map[static_cast<std::size_t>(2 * idx[rank])] = open;
      map[static_cast<std::size_t>(2 * idx[rank] + 1)] = close;
      TagSource src = p.inserted ? TagSource::ParserInserted : TagSource::UserGroup;
      table_.entries[static_cast<std::size_t>(open)] = {TagKind::Early, close, src, p.group, true};
      table_.entries[static_cast<std::size_t>(close)] = {p.lazy ? TagKind::Early : TagKind::Late, open, src, p.group, false};
    }
    table_.order.resize(table_.entries.size());
    std::iota(table_.order.begin(), table_.order.end(), 0);
    table_.groups = groups_;
    table_.policy = opt_.policy;
    table_.closing_rank.assign(static_cast<std::size_t>(groups_), 0);
    int rank = 0;
    for (int k : closing) {
      const Pair& p = pairs_[static_cast<std::size_t>(k)];
      if (!p.inserted) table_.closing_rank[static_cast<std::size_t>(p.group - 1)] = ++rank;
    }
    return remap_tags(r, map);
  }

  ParseOptions opt_;
  std::vector<Symbol> syms_;
  std::vector<std::size_t> offsets_;
  std::size_t pos_ = 0;
  int groups_ = 0;
  std::vector<Pair> pairs_;
  TagTable table_;
};

}  // namespace

Parsed parse(const std::string& pattern, const ParseOptions& options) { return Parser(pattern, options).run(); }

}  // namespace drx
