#include "semantics.h"

#include <algorithm>

namespace drx {

LinearForm merge(LinearForm form) {
  LinearForm out;
  std::vector<std::vector<Regex>> bodies;
  for (Alt& a : form) {
    if (a.body->kind == Kind::Empty) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const Alt& o) { return o.updates == a.updates; });
    if (it == out.end()) {
      out.push_back({std::move(a.updates), a.body});
      bodies.push_back({a.body});
    } else {
      bodies[static_cast<std::size_t>(it - out.begin())].push_back(a.body);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (bodies[i].size() > 1) out[i].body = mk_union(std::move(bodies[i]));
  return out;
}

Regex derive_plain(const Regex& r, Symbol b) {
  switch (r->kind) {
    case Kind::Empty:
    case Kind::Eps:
    case Kind::Tag: return mk_empty();
    case Kind::Class:
      if (r->set.contains(b)) return mk_eps();
      if (r->transparent && is_anchor(b)) return r;
      return mk_empty();
    case Kind::Star: return mk_concat(derive_plain(r->kids[0], b), r);
    case Kind::Concat: {
      Regex d = mk_concat(derive_plain(r->kids[0], b), r->kids[1]);
      if (!r->kids[0]->nullable) return d;
      return mk_union(d, derive_plain(r->kids[1], b));
    }
    case Kind::Union:
    case Kind::Inter: {
      std::vector<Regex> kids;
      kids.reserve(r->kids.size());
      for (const Regex& k : r->kids) {
        Regex d = derive_plain(k, b);
        if (r->kind == Kind::Inter && d->kind == Kind::Empty) return d;
        kids.push_back(std::move(d));
      }
      return r->kind == Kind::Union ? mk_union(std::move(kids)) : mk_inter(std::move(kids));
    }
    case Kind::Comp: return mk_comp(derive_plain(r->kids[0], b));
    case Kind::Bank: return derive_plain(r->kids[0], b);
  }
  return mk_empty();
}

namespace {

LinearForm product(const LinearForm& a, const LinearForm& b) {
  LinearForm out;
  for (const Alt& x : a)
    for (const Alt& y : b) out.push_back({compose(x.updates, y.updates), mk_inter(x.body, y.body)});
  return out;
}

LinearForm then(const LinearForm& f, const Regex& rest) {
  LinearForm out;
  out.reserve(f.size());
  for (const Alt& a : f) out.push_back({a.updates, mk_concat(a.body, rest)});
  return out;
}

}  // namespace

LinearForm derive_body(const Regex& body, Symbol b, Position p) {
  if (!body->tagged) {
    Regex d = derive_plain(body, b);
    if (d->kind == Kind::Empty) return {};
    return {{{}, d}};
  }
  switch (body->kind) {
    case Kind::Tag: return {};
    case Kind::Star: {
      // Empty rounds may come before the one that consumes b.
      LinearForm d = then(derive_body(body->kids[0], b, p), body);
      LinearForm out;
      for (const Updates& u : null_alts(body, p))
        for (const Alt& a : d) out.push_back({compose(u, a.updates), a.body});
      return merge(std::move(out));
    }
    case Kind::Concat: {
      const Regex& l = body->kids[0];
      const Regex& rest = body->kids[1];
      LinearForm out = then(derive_body(l, b, p), rest);
      if (l->nullable) {
        LinearForm dr = derive_body(rest, b, p);
        for (const Updates& n : null_alts(l, p))
          for (const Alt& a : dr) out.push_back({compose(n, a.updates), a.body});
      }
      return merge(std::move(out));
    }
    case Kind::Union: {
      LinearForm out;
      for (const Regex& k : body->kids)
        for (Alt& a : derive_body(k, b, p)) out.push_back(std::move(a));
      return merge(std::move(out));
    }
    case Kind::Inter: {
      LinearForm out = derive_body(body->kids[0], b, p);
      for (std::size_t i = 1; i < body->kids.size() && !out.empty(); ++i)
        out = merge(product(out, derive_body(body->kids[i], b, p)));
      return out;
    }
    case Kind::Comp: {
      // Memory inside a complement is never reported.
      std::vector<Regex> bodies;
      for (const Alt& a : derive_body(body->kids[0], b, p)) bodies.push_back(a.body);
      return {{{}, mk_comp(mk_union(std::move(bodies)))}};
    }
    case Kind::Bank: return derive_body(body->kids[0], b, p);
    default: break;
  }
  Regex d = derive_plain(body, b);
  if (d->kind == Kind::Empty) return {};
  return {{{}, d}};
}

std::vector<Updates> null_alts(const Regex& body, Position p) {
  if (!body->nullable) return {};
  if (!body->tagged) return {Updates{}};
  switch (body->kind) {
    case Kind::Tag: return {Updates{{body->tag, p}}};
    case Kind::Comp: return {Updates{}};
    case Kind::Star: {
      // Skipping the loop, or going round it on ε any number of times.
      std::vector<Updates> out{Updates{}};
      const std::vector<Updates> once = null_alts(body->kids[0], p);
      for (std::size_t i = 0; i < out.size(); ++i)
        for (const Updates& u : once) {
          Updates c = compose(out[i], u);
          if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
        }
      return out;
    }
    case Kind::Bank: return null_alts(body->kids[0], p);
    case Kind::Union: {
      std::vector<Updates> out;
      for (const Regex& k : body->kids)
        for (Updates& u : null_alts(k, p))
          if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(std::move(u));
      return out;
    }
    case Kind::Concat:
    case Kind::Inter: {
      std::vector<Updates> out{Updates{}};
      for (const Regex& k : body->kids) {
        std::vector<Updates> next;
        for (const Updates& a : out)
          for (const Updates& b : null_alts(k, p)) {
            Updates c = compose(a, b);
            if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(std::move(c));
          }
        out = std::move(next);
      }
      return out;
    }
    default: return {Updates{}};
  }
}

NullifyResult nullify(const Regex& r, Position p) {
  NullifyResult out;
  if (!r->nullable) return out;
  if (!r->banked) {
    out.kind = NullifyResult::Kind::NullablePlain;
    return out;
  }
  int next = max_bank(r) + 1;
  for (const Regex& t : terms_of(r)) {
    if (t->kind != Kind::Bank || !t->nullable) continue;
    bool first = true;
    for (const Updates& u : null_alts(t->kids[0], p)) {
      out.banks.emplace_back(first ? t->bank : next++, compose(t->pending, u));
      first = false;
    }
  }
  out.kind = out.banks.empty() ? NullifyResult::Kind::NullablePlain : NullifyResult::Kind::NullableWithMemory;
  return out;
}

Regex derive(const Regex& r, Symbol b, Position p, int& next_bank) {
  if (!r->banked) return derive_plain(r, b);
  std::vector<Regex> out;
  for (const Regex& t : terms_of(r)) {
    if (t->kind != Kind::Bank) {
      out.push_back(derive_plain(t, b));
      continue;
    }
    bool first = true;
    for (Alt& a : derive_body(t->kids[0], b, p)) {
      int bank = first ? t->bank : next_bank++;
      out.push_back(mk_bank(bank, t->origin, compose(t->pending, a.updates), a.body));
      first = false;
    }
  }
  return mk_union(std::move(out));
}

Regex derive(const Regex& r, Symbol b, Position p) {
  int next = max_bank(r) + 1;
  return derive(r, b, p, next);
}

Regex derive_string(const Regex& r, const std::vector<Symbol>& s, Position start) {
  Regex cur = r;
  Position p = start;
  for (Symbol c : s) {
    cur = derive(cur, c, p++);
    if (cur->kind == Kind::Empty) break;
  }
  return cur;
}

SymbolPartition refine(const SymbolPartition& a, const SymbolPartition& b) {
  SymbolPartition out;
  for (const SymbolSet& x : a)
    for (const SymbolSet& y : b) {
      SymbolSet z = x & y;
      if (!z.empty()) out.push_back(std::move(z));
    }
  std::sort(out.begin(), out.end());
  return out;
}

SymbolPartition derivative_classes(const Regex& r) {
  const SymbolSet all = SymbolSet::universe();
  switch (r->kind) {
    case Kind::Empty:
    case Kind::Eps:
    case Kind::Tag: return {all};
    case Kind::Class: {
      SymbolPartition out;
      out.push_back(r->set);
      SymbolSet rest = all.minus(r->set);
      if (r->transparent) {
        SymbolSet skip = rest.anchor_part();
        SymbolSet dead = rest.base_part();
        if (!skip.empty()) out.push_back(skip);
        if (!dead.empty()) out.push_back(dead);
      } else if (!rest.empty()) {
        out.push_back(rest);
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    case Kind::Star:
    case Kind::Comp:
    case Kind::Bank: return derivative_classes(r->kids[0]);
    case Kind::Concat: {
      SymbolPartition l = derivative_classes(r->kids[0]);
      if (!r->kids[0]->nullable) return l;
      return refine(l, derivative_classes(r->kids[1]));
    }
    case Kind::Union:
    case Kind::Inter: {
      SymbolPartition out = derivative_classes(r->kids[0]);
      for (std::size_t i = 1; i < r->kids.size(); ++i) out = refine(out, derivative_classes(r->kids[i]));
      return out;
    }
  }
  return {all};
}

}  // namespace drx
