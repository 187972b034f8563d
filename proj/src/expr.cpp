#include "expr.h"

#include <algorithm>
#include <functional>

namespace drx {

Updates compose(const Updates& first, const Updates& then) {
  if (then.empty()) return first;
  if (first.empty()) return then;
  Updates out;
  out.reserve(first.size() + then.size());
  std::size_t i = 0, j = 0;
  while (i < first.size() || j < then.size()) {
    if (j == then.size() || (i < first.size() && first[i].slot < then[j].slot)) {
      out.push_back(first[i++]);
    } else if (i == first.size() || then[j].slot < first[i].slot) {
      out.push_back(then[j++]);
    } else {
      out.push_back(then[j++]);
      ++i;
    }
  }
  return out;
}

Updates with_update(const Updates& u, int slot, Position value) {
  return compose(u, Updates{{slot, value}});
}

int compare_updates(const Updates& a, const Updates& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].slot != b[i].slot) return a[i].slot < b[i].slot ? -1 : 1;
    if (a[i].value != b[i].value) return a[i].value < b[i].value ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

namespace {

inline std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

Regex finish(Node n) {
  std::size_t h = mix(0x51ed27u, static_cast<std::size_t>(n.kind));
  switch (n.kind) {
    case Kind::Empty: n.nullable = false; break;
    case Kind::Eps: n.nullable = true; break;
    case Kind::Class:
      n.nullable = false;
      h = mix(mix(h, n.set.hash()), n.transparent);
      break;
    case Kind::Tag:
      n.nullable = true;
      n.tagged = true;
      h = mix(mix(h, static_cast<std::size_t>(n.tag_kind)), static_cast<std::size_t>(n.tag));
      break;
    case Kind::Star: n.nullable = true; break;
    case Kind::Concat: n.nullable = n.kids[0]->nullable && n.kids[1]->nullable; break;
    case Kind::Union:
      n.nullable = std::any_of(n.kids.begin(), n.kids.end(), [](const Regex& k) { return k->nullable; });
      break;
    case Kind::Inter:
      n.nullable = std::all_of(n.kids.begin(), n.kids.end(), [](const Regex& k) { return k->nullable; });
      break;
    case Kind::Comp: n.nullable = !n.kids[0]->nullable; break;
    case Kind::Bank:
      n.nullable = n.kids[0]->nullable;
      n.banked = true;
      break;
  }
  for (const Regex& k : n.kids) {
    h = mix(h, k->hash);
    n.tagged = n.tagged || k->tagged;
    n.banked = n.banked || k->banked;
    n.size += k->size;
  }
  n.hash = h;
  return std::make_shared<const Node>(std::move(n));
}

Regex leaf(Kind k) {
  Node n;
  n.kind = k;
  return finish(std::move(n));
}

Regex node(Kind k, std::vector<Regex> kids) {
  Node n;
  n.kind = k;
  n.kids = std::move(kids);
  return finish(std::move(n));
}

bool is_any_star(const Regex& r) { return r->kind == Kind::Comp && r->kids[0]->kind == Kind::Empty; }

}  // namespace

Regex mk_empty() {
  static const Regex r = leaf(Kind::Empty);
  return r;
}

Regex mk_eps() {
  static const Regex r = leaf(Kind::Eps);
  return r;
}

Regex mk_class(const SymbolSet& set, bool transparent) {
  if (set.empty()) return mk_empty();
  Node n;
  n.kind = Kind::Class;
  n.set = set;
  n.transparent = transparent;
  return finish(std::move(n));
}

Regex mk_symbol(Symbol s, bool transparent) { return mk_class(SymbolSet::of(s), transparent); }

Regex mk_tag(TagKind kind, int id) {
  Node n;
  n.kind = Kind::Tag;
  n.tag_kind = kind;
  n.tag = id;
  return finish(std::move(n));
}

Regex mk_star(const Regex& r) {
  switch (r->kind) {
    case Kind::Star: return r;
    case Kind::Eps:
    case Kind::Empty: return mk_eps();
    default: return node(Kind::Star, {r});
  }
}

Regex mk_concat(const Regex& l, const Regex& r) {
  if (l->kind == Kind::Empty || r->kind == Kind::Empty) return mk_empty();
  if (l->kind == Kind::Eps) return r;
  if (r->kind == Kind::Eps) return l;
  if (l->kind == Kind::Concat) return mk_concat(l->kids[0], mk_concat(l->kids[1], r));
  return node(Kind::Concat, {l, r});
}

Regex mk_concat(const std::vector<Regex>& parts) {
  Regex out = mk_eps();
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) out = mk_concat(*it, out);
  return out;
}

Regex mk_union(const Regex& a, const Regex& b) { return mk_union(std::vector<Regex>{a, b}); }

Regex mk_union(std::vector<Regex> terms) {
  std::vector<Regex> flat;
  flat.reserve(terms.size());
  bool banked = false;
  for (const Regex& t : terms) {
    if (t->kind == Kind::Union) {
      for (const Regex& k : t->kids) flat.push_back(k);
    } else if (t->kind != Kind::Empty) {
      flat.push_back(t);
    }
    banked = banked || t->banked;
  }
  if (banked) {
    // Sum-of-terms form: operand order is the derivation order and carries
    // meaning for bank allocation, so terms are only deduplicated.
    bool ends_nullable = std::any_of(flat.begin(), flat.end(), [](const Regex& t) {
      return t->kind == Kind::Bank && t->kids[0]->nullable;
    });
    std::vector<Regex> kept;
    for (const Regex& t : flat) {
      if (t->kind == Kind::Eps && ends_nullable) continue;
      bool dup = std::any_of(kept.begin(), kept.end(), [&](const Regex& k) { return identical(k, t); });
      if (!dup) kept.push_back(t);
    }
    flat = std::move(kept);
  } else {
    if (std::any_of(flat.begin(), flat.end(), is_any_star)) return mk_any_star();
    std::stable_sort(flat.begin(), flat.end(), [](const Regex& x, const Regex& y) { return compare(x, y) < 0; });
    flat.erase(std::unique(flat.begin(), flat.end(), [](const Regex& x, const Regex& y) { return compare(x, y) == 0; }),
               flat.end());
  }
  if (flat.empty()) return mk_empty();
  if (flat.size() == 1) return flat[0];
  return node(Kind::Union, std::move(flat));
}

Regex mk_inter(const Regex& a, const Regex& b) { return mk_inter(std::vector<Regex>{a, b}); }

Regex mk_inter(std::vector<Regex> terms) {
  std::vector<Regex> flat;
  for (const Regex& t : terms) {
    if (t->kind == Kind::Inter) {
      for (const Regex& k : t->kids) flat.push_back(k);
    } else {
      flat.push_back(t);
    }
  }
  if (std::any_of(flat.begin(), flat.end(), [](const Regex& t) { return t->kind == Kind::Empty; })) return mk_empty();
  flat.erase(std::remove_if(flat.begin(), flat.end(), is_any_star), flat.end());
  std::stable_sort(flat.begin(), flat.end(), [](const Regex& x, const Regex& y) { return compare(x, y) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end(), [](const Regex& x, const Regex& y) { return compare(x, y) == 0; }),
             flat.end());
  if (flat.empty()) return mk_any_star();
  if (flat.size() == 1) return flat[0];
  return node(Kind::Inter, std::move(flat));
}

Regex mk_comp(const Regex& r) {
  if (r->kind == Kind::Comp) return r->kids[0];
  return node(Kind::Comp, {r});
}

Regex mk_bank(int bank, int origin, Updates pending, const Regex& body) {
  if (body->kind == Kind::Empty) return mk_empty();
  Node n;
  n.kind = Kind::Bank;
  n.bank = bank;
  n.origin = origin;
  n.pending = std::move(pending);
  n.kids = {body};
  return finish(std::move(n));
}

Regex mk_bank(int bank, const Regex& body) { return mk_bank(bank, bank, {}, body); }

Regex mk_any_star() {
  static const Regex r = node(Kind::Comp, {mk_empty()});
  return r;
}

int compare(const Regex& a, const Regex& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case Kind::Class:
      if (int c = a->set.compare(b->set)) return c;
      if (a->transparent != b->transparent) return a->transparent ? 1 : -1;
      return 0;
    case Kind::Tag:
      if (a->tag_kind != b->tag_kind) return a->tag_kind < b->tag_kind ? -1 : 1;
      if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
      return 0;
    default: break;
  }
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (int c = compare(a->kids[i], b->kids[i])) return c;
  return 0;
}

bool identical(const Regex& a, const Regex& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  switch (a->kind) {
    case Kind::Class:
      if (!(a->set == b->set) || a->transparent != b->transparent) return false;
      break;
    case Kind::Tag:
      if (a->tag_kind != b->tag_kind || a->tag != b->tag) return false;
      break;
    case Kind::Bank:
      if (a->bank != b->bank || a->origin != b->origin || !(a->pending == b->pending)) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!identical(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {

void collect_pairs(const Regex& a, const Regex& b, std::vector<std::pair<int, int>>& out) {
  if (!a->banked) return;
  if (a->kind == Kind::Bank) out.emplace_back(a->bank, b->bank);
  for (std::size_t i = 0; i < a->kids.size(); ++i) collect_pairs(a->kids[i], b->kids[i], out);
}

}  // namespace

BankPairing equal_mod_banks(const Regex& a, const Regex& b) {
  BankPairing out;
  if (a->hash != b->hash || compare(a, b) != 0) return out;
  out.equal = true;
  collect_pairs(a, b, out.pairs);
  return out;
}

std::vector<Regex> terms_of(const Regex& r) {
  if (r->kind == Kind::Empty) return {};
  if (r->kind == Kind::Union && r->banked) return r->kids;
  return {r};
}

int max_bank(const Regex& r) {
  if (!r->banked) return 0;
  int m = r->kind == Kind::Bank ? std::max(r->bank, r->origin) : 0;
  for (const Regex& k : r->kids) m = std::max(m, max_bank(k));
  return m;
}

Regex erase_tags(const Regex& r) {
  if (!r->tagged && !r->banked) return r;
  switch (r->kind) {
    case Kind::Tag: return mk_eps();
    case Kind::Bank: return erase_tags(r->kids[0]);
    case Kind::Star: return mk_star(erase_tags(r->kids[0]));
    case Kind::Comp: return mk_comp(erase_tags(r->kids[0]));
    case Kind::Concat: return mk_concat(erase_tags(r->kids[0]), erase_tags(r->kids[1]));
    case Kind::Union:
    case Kind::Inter: {
      std::vector<Regex> kids;
      for (const Regex& k : r->kids) kids.push_back(erase_tags(k));
      return r->kind == Kind::Union ? mk_union(std::move(kids)) : mk_inter(std::move(kids));
    }
    default: return r;
  }
}

std::vector<int> tags_in(const Regex& r) {
  std::vector<int> out;
  std::function<void(const Regex&)> walk = [&](const Regex& n) {
    if (!n->tagged) return;
    if (n->kind == Kind::Tag) out.push_back(n->tag);
    for (const Regex& k : n->kids) walk(k);
  };
  walk(r);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Precedence levels: 0 union, 1 intersection, 2 concatenation, 3 closure.
void print(const Regex& r, int ctx, std::string& out) {
  auto wrap = [&](int level, auto body) {
    bool paren = ctx > level;
    if (paren) out += '(';
    body();
    if (paren) out += ')';
  };
  switch (r->kind) {
    case Kind::Empty: out += "∅"; return;
    case Kind::Eps: out += "ε"; return;
    case Kind::Class:
      if (r->transparent) {
        out += to_string(r->set);
      } else {
        std::string s = to_string(r->set);
        if (s.size() > 1 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
        out += '{' + s + '}';
      }
      return;
    case Kind::Tag:
      out += (r->tag_kind == TagKind::Early ? "τ" : "λ") + std::to_string(r->tag);
      return;
    case Kind::Star:
      print(r->kids[0], 4, out);
      out += '*';
      return;
    case Kind::Comp:
      if (is_any_star(r)) {
        out += "~∅";
        return;
      }
      wrap(3, [&] {
        out += '~';
        print(r->kids[0], 3, out);
      });
      return;
    case Kind::Concat:
      wrap(2, [&] {
        print(r->kids[0], 3, out);
        print(r->kids[1], 2, out);
      });
      return;
    case Kind::Union:
    case Kind::Inter:
      wrap(r->kind == Kind::Union ? 0 : 1, [&] {
        for (std::size_t i = 0; i < r->kids.size(); ++i) {
          if (i) out += r->kind == Kind::Union ? " + " : " & ";
          print(r->kids[i], r->kind == Kind::Union ? 1 : 2, out);
        }
      });
      return;
    case Kind::Bank:
      wrap(2, [&] {
        out += "β" + std::to_string(r->bank);
        if (r->origin != r->bank) out += "^" + std::to_string(r->origin);
        for (const SlotUpdate& u : r->pending)
          out += "[" + std::to_string(u.slot) + "←" + std::to_string(u.value) + "]";
        if (r->kids[0]->kind != Kind::Eps) print(r->kids[0], 2, out);
      });
      return;
  }
}

}  // namespace

std::string to_string(const Regex& r) {
  std::string out;
  print(r, 0, out);
  return out;
}

}  // namespace drx
