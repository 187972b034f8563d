#include "submatch.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace drx {

std::string to_string(const MemoryOp& op) {
  switch (op.op) {
    case MemoryOp::Op::Init: return "β" + std::to_string(op.bank) + " ← init";
    case MemoryOp::Op::Copy: return "β" + std::to_string(op.bank) + " ← β" + std::to_string(op.src);
    case MemoryOp::Op::Set: {
      std::string v = "p";
      if (op.offset > 0) v += "+" + std::to_string(op.offset);
      if (op.offset < 0) v += std::to_string(op.offset);
      return "β" + std::to_string(op.bank) + ".slot" + std::to_string(op.slot) + " ← " + v;
    }
  }
  return "?";
}

std::string to_string(const std::vector<MemoryOp>& ops) {
  std::string out;
  for (const MemoryOp& op : ops) {
    if (!out.empty()) out += "; ";
    out += to_string(op);
  }
  return out;
}

namespace {

std::vector<Position>& bank_at(Store& store, int bank, int slots) {
  auto i = static_cast<std::size_t>(bank);
  if (store.size() <= i) store.resize(i + 1);
  std::vector<Position>& b = store[i];
  if (b.size() != static_cast<std::size_t>(slots)) b.assign(static_cast<std::size_t>(slots), kUnset);
  return b;
}

}  // namespace

void execute(const std::vector<MemoryOp>& ops, Store& store, Position base, int slots) {
  for (const MemoryOp& op : ops) {
    switch (op.op) {
      case MemoryOp::Op::Init:
        bank_at(store, op.bank, slots).assign(static_cast<std::size_t>(slots), kUnset);
        break;
      case MemoryOp::Op::Copy: {
        std::vector<Position> src = bank_at(store, op.src, slots);
        bank_at(store, op.bank, slots) = std::move(src);
        break;
      }
      case MemoryOp::Op::Set:
        bank_at(store, op.bank, slots)[static_cast<std::size_t>(op.slot)] = base + op.offset;
        break;
    }
  }
}

int bank_compare(const std::vector<Position>& a, const std::vector<Position>& b, const TagTable& tags) {
  for (int slot : tags.order) {
    Position x = a[static_cast<std::size_t>(slot)];
    Position y = b[static_cast<std::size_t>(slot)];
    if (x == y) continue;
    if (tags.entries[static_cast<std::size_t>(slot)].kind == TagKind::Early) {
      if (x == kUnset) return -1;
      if (y == kUnset) return 1;
      return x < y ? 1 : -1;
    }
    if (x == kUnset) return -1;
    if (y == kUnset) return 1;
    return x > y ? 1 : -1;
  }
  return 0;
}

namespace {

// Every write list by which an already-evaluated form can match ε.
std::vector<Updates> nulls(const LinearForm& form, Position p) {
  std::vector<Updates> out;
  for (const Alt& a : form)
    for (const Updates& n : null_alts(a.body, p)) {
      Updates u = compose(a.updates, n);
      if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(std::move(u));
    }
  return out;
}

Updates fold(const std::vector<Updates>& all) {
  Updates u;
  for (const Updates& x : all) u = compose(u, x);
  return u;
}

}  // namespace

LinearForm teval_body(const Regex& body, Position p, TevalMode mode) {
  if (!body->tagged) return {{{}, body}};
  switch (body->kind) {
    case Kind::Tag: return {{{{body->tag, p}}, mk_eps()}};
    case Kind::Comp: return {{{}, body}};
    case Kind::Bank: return teval_body(body->kids[0], p, mode);
    case Kind::Star: {
      std::vector<Updates> ns = nulls(teval_body(body->kids[0], p, mode), p);
      if (mode == TevalMode::Collapse) return {{fold(ns), body}};
      LinearForm out{{{}, body}};
      for (Updates& n : ns) out.push_back({std::move(n), body});
      return merge(std::move(out));
    }
    case Kind::Union: {
      LinearForm out;
      for (const Regex& k : body->kids)
        for (Alt& a : teval_body(k, p, mode)) out.push_back(std::move(a));
      return merge(std::move(out));
    }
    case Kind::Inter: {
      LinearForm out = teval_body(body->kids[0], p, mode);
      for (std::size_t i = 1; i < body->kids.size(); ++i) {
        LinearForm next;
        for (const Alt& x : out)
          for (const Alt& y : teval_body(body->kids[i], p, mode))
            next.push_back({compose(x.updates, y.updates), mk_inter(x.body, y.body)});
        out = merge(std::move(next));
      }
      return out;
    }
    case Kind::Concat: {
      const Regex& l = body->kids[0];
      const Regex& rest = body->kids[1];
      LinearForm out;
      if (l->kind == Kind::Tag) {
        Updates t{{l->tag, p}};
        for (Alt& a : teval_body(rest, p, mode)) out.push_back({compose(t, a.updates), a.body});
        return merge(std::move(out));
      }
      LinearForm left;
      for (Alt& a : teval_body(l, p, mode)) {
        if (a.body->kind == Kind::Eps) {
          // l is used up on this path, so the rest is evaluated as well.
          for (Alt& b : teval_body(rest, p, mode)) left.push_back({compose(a.updates, b.updates), std::move(b.body)});
          continue;
        }
        left.push_back({std::move(a.updates), mk_concat(a.body, rest)});
      }
      if (!l->nullable) return merge(std::move(left));
      if (mode == TevalMode::Collapse) {
        Updates h = fold(nulls(teval_body(rest, p, mode), p));
        for (const Alt& a : left) out.push_back({compose(h, a.updates), a.body});
        return merge(std::move(out));
      }
      // Either l goes on consuming, or the whole concatenation is done
      // here. Writes made by the rest only belong to the second kind of
      // path; paths where the rest goes on consuming are left to the
      // derivative, which crosses the same tags at the same position.
      out = std::move(left);
      std::vector<Updates> tail = nulls(teval_body(rest, p, mode), p);
      for (const Updates& u : null_alts(l, p))
        for (const Updates& n : tail) out.push_back({compose(u, n), mk_eps()});
      return merge(std::move(out));
    }
    default: return {{{}, body}};
  }
}

Regex teval(const Regex& r, Position p, int& next_bank, TevalMode mode) {
  if (!r->banked) return r;
  std::vector<Regex> out;
  for (const Regex& t : terms_of(r)) {
    if (t->kind != Kind::Bank) {
      out.push_back(t);
      continue;
    }
    bool first = true;
    for (const Alt& a : teval_body(t->kids[0], p, mode)) {
      Updates pending = compose(t->pending, a.updates);
      // Paths that leave the same memory behind share one term.
      auto same = std::find_if(out.begin(), out.end(), [&](const Regex& o) {
        return o->kind == Kind::Bank && o->origin == t->origin && o->pending == pending;
      });
      if (same != out.end()) {
        *same = mk_bank((*same)->bank, t->origin, std::move(pending), mk_union((*same)->kids[0], a.body));
        continue;
      }
      out.push_back(mk_bank(first ? t->bank : next_bank++, t->origin, std::move(pending), a.body));
      first = false;
    }
  }
  return mk_union(std::move(out));
}

Regex teval(const Regex& r, Position p, TevalMode mode) {
  int next = max_bank(r) + 1;
  return teval(r, p, next, mode);
}

std::vector<Position> term_contents(const Regex& term, const Store& store, int slots) {
  std::vector<Position> c(static_cast<std::size_t>(slots), kUnset);
  if (term->kind != Kind::Bank) return c;
  auto i = static_cast<std::size_t>(term->origin);
  if (i < store.size() && store[i].size() == c.size()) c = store[i];
  for (const SlotUpdate& u : term->pending) c[static_cast<std::size_t>(u.slot)] = u.value;
  return c;
}

namespace {

// Which of the relevant tags a complete path through r can cross, as bit
// masks over positions in relevant. Over-approximates under & (both sides
// are assumed independent) and treats ~ as opaque.
std::vector<std::uint32_t> crossings(const Regex& r, const std::vector<int>& relevant) {
  auto join = [](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t a : x)
      for (std::uint32_t b : y) out.push_back(a | b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  if (!r->tagged) {
    if (r->kind == Kind::Empty || (r->kind == Kind::Class && r->set.empty())) return {};
    return {0};
  }
  switch (r->kind) {
    case Kind::Tag: {
      auto it = std::find(relevant.begin(), relevant.end(), r->tag);
      return {it == relevant.end() ? 0u : 1u << (it - relevant.begin())};
    }
    case Kind::Bank: return crossings(r->kids[0], relevant);
    case Kind::Comp: return {0};
    case Kind::Union: {
      std::vector<std::uint32_t> out;
      for (const Regex& k : r->kids)
        for (std::uint32_t m : crossings(k, relevant)) out.push_back(m);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case Kind::Concat:
    case Kind::Inter: {
      std::vector<std::uint32_t> out = crossings(r->kids[0], relevant);
      for (std::size_t i = 1; i < r->kids.size(); ++i) out = join(out, crossings(r->kids[i], relevant));
      return out;
    }
    case Kind::Star: {
      std::vector<std::uint32_t> step = crossings(r->kids[0], relevant), out{0};
      for (std::size_t n = 0; n != out.size();) {
        n = out.size();
        out = join(out, step);
        out.push_back(0);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
      }
      return out;
    }
    default: return {0};
  }
}

// bank_compare with the slots in mask (over relevant) treated as equal.
int compare_outside(const std::vector<Position>& a, const std::vector<Position>& b, const TagTable& tags,
                    const std::vector<int>& relevant, std::uint32_t mask) {
  std::vector<Position> x = a, y = b;
  for (std::size_t i = 0; i < relevant.size(); ++i)
    if (mask & (1u << i)) x[static_cast<std::size_t>(relevant[i])] = y[static_cast<std::size_t>(relevant[i])];
  return bank_compare(x, y, tags);
}

// The members of a group worth keeping. Later writes land equally in every
// bank of the group, so for each set of slots the rest of body may still
// overwrite, only the best bank on the remaining slots can win; everything
// never best under any such set is dropped. Members arrive best first.
template <class Member>
std::vector<bool> survivors(const std::vector<Member>& g, const Regex& body, const TagTable& tags) {
  std::vector<bool> keep(g.size(), false);
  keep[0] = true;
  std::vector<int> differ;
  for (std::size_t i = 0; i < g[0].contents.size(); ++i)
    for (const Member& m : g)
      if (m.contents[i] != g[0].contents[i]) {
        differ.push_back(static_cast<int>(i));
        break;
      }
  if (differ.empty() || differ.size() > 12) return keep;
  for (std::uint32_t mask : crossings(body, differ)) {
    std::size_t top = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
      if (compare_outside(g[i].contents, g[top].contents, tags, differ, mask) > 0) top = i;
    keep[top] = true;
  }
  return keep;
}

}  // namespace

Disambiguated disambiguate(const Regex& r, const TagTable& tags, const Store& store, Position base) {
  struct Member {
    Regex term;
    std::vector<Position> contents;
  };
  std::vector<std::vector<Member>> groups;
  std::vector<Regex> loose;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
  for (const Regex& t : terms_of(r)) {
    if (t->kind != Kind::Bank) {
      loose.push_back(t);
      continue;
    }
    std::vector<Position> c = term_contents(t, store, tags.size());
    std::vector<std::size_t>& bucket = by_hash[t->kids[0]->hash];
    auto it = std::find_if(bucket.begin(), bucket.end(),
                           [&](std::size_t g) { return compare(groups[g].front().term->kids[0], t->kids[0]) == 0; });
    if (it == bucket.end()) {
      bucket.push_back(groups.size());
      groups.push_back({{t, std::move(c)}});
    } else {
      groups[*it].push_back({t, std::move(c)});
    }
  }
  std::vector<Member> kept;
  for (std::vector<Member>& g : groups) {
    std::stable_sort(g.begin(), g.end(),
                     [&](const Member& x, const Member& y) { return bank_compare(x.contents, y.contents, tags) > 0; });
    std::vector<bool> keep = survivors(g, g.front().term->kids[0], tags);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (keep[i]) kept.push_back(std::move(g[i]));
  }
  Disambiguated out;
  for (const Member& m : kept)
    if (m.term->bank != m.term->origin) out.ops.push_back(MemoryOp::copy(m.term->bank, m.term->origin));
  std::vector<Regex> terms;
  for (const Member& m : kept) {
    for (const SlotUpdate& u : m.term->pending) out.ops.push_back(MemoryOp::set(m.term->bank, u.slot, u.value - base));
    terms.push_back(mk_bank(m.term->bank, m.term->kids[0]));
  }
  for (const Regex& t : loose) terms.push_back(t);
  out.regex = mk_union(std::move(terms));
  return out;
}

Regex compact(const Regex& r) {
  if (!r->banked) return r;
  std::vector<Regex> terms;
  int k = 0;
  for (const Regex& t : terms_of(r)) {
    if (t->kind != Kind::Bank) {
      terms.push_back(t);
      continue;
    }
    ++k;
    terms.push_back(mk_bank(k, k, t->pending, t->kids[0]));
  }
  return mk_union(std::move(terms));
}

std::vector<MemoryOp> rearrange_memory(const Regex& d, const Regex& dbar, const std::vector<MemoryOp>& ops) {
  BankPairing pairing = equal_mod_banks(d, dbar);
  if (!pairing.equal) throw std::logic_error("rearrange_memory: expressions differ beyond bank identities");
  if (std::all_of(pairing.pairs.begin(), pairing.pairs.end(), [](const auto& pr) { return pr.first == pr.second; }))
    return ops;

  // Symbolic contents of each bank after ops: where it was copied from
  // (a bank id as it stood before ops, or a fresh all-unset bank) and the
  // slots written since.
  constexpr int kInit = -1;
  struct Value {
    int src;
    std::map<int, Position> writes;
  };
  std::map<int, Value> sym;
  auto value_of = [&](int b) -> Value {
    auto it = sym.find(b);
    return it == sym.end() ? Value{b, {}} : it->second;
  };
  int scratch = std::max(max_bank(d), max_bank(dbar));
  for (const MemoryOp& op : ops) {
    scratch = std::max({scratch, op.bank, op.src});
    switch (op.op) {
      case MemoryOp::Op::Init: sym[op.bank] = {kInit, {}}; break;
      case MemoryOp::Op::Copy: sym[op.bank] = value_of(op.src); break;
      case MemoryOp::Op::Set: {
        Value v = value_of(op.bank);
        v.writes[op.slot] = op.offset;
        sym[op.bank] = std::move(v);
        break;
      }
    }
  }
  ++scratch;

  struct Target {
    int bank;
    Value value;
    bool done;
  };
  std::vector<Target> targets;
  for (const auto& [from, to] : pairing.pairs) targets.push_back({to, value_of(from), false});

  std::vector<MemoryOp> out;
  auto emit = [&](Target& t) {
    if (t.value.src == kInit)
      out.push_back(MemoryOp::init(t.bank));
    else if (t.value.src != t.bank)
      out.push_back(MemoryOp::copy(t.bank, t.value.src));
    for (const auto& [slot, off] : t.value.writes) out.push_back(MemoryOp::set(t.bank, slot, off));
    t.done = true;
  };
  auto blocked = [&](const Target& t) {
    return std::any_of(targets.begin(), targets.end(),
                       [&](const Target& u) { return !u.done && &u != &t && u.value.src == t.bank; });
  };
  for (;;) {
    bool pending = false, progress = false;
    for (Target& t : targets) {
      if (t.done) continue;
      pending = true;
      if (!blocked(t)) {
        emit(t);
        progress = true;
      }
    }
    if (!pending) break;
    if (progress) continue;
    // Every remaining target is read by another one: park one in scratch.
    for (Target& t : targets) {
      if (t.done) continue;
      out.push_back(MemoryOp::copy(scratch, t.bank));
      for (Target& u : targets)
        if (!u.done && u.value.src == t.bank) u.value.src = scratch;
      break;
    }
  }
  return out;
}

namespace {

MemoryStep settle(const Regex& t, std::vector<MemoryOp> ops, const TagTable& tags, const Store& store, Position base) {
  Disambiguated dis = disambiguate(t, tags, store, base);
  ops.insert(ops.end(), dis.ops.begin(), dis.ops.end());
  Regex dbar = compact(dis.regex);
  return {dbar, rearrange_memory(dis.regex, dbar, ops)};
}

}  // namespace

MemoryStep start_state(const Regex& body, const TagTable& tags, TevalMode mode) {
  std::vector<MemoryOp> ops{MemoryOp::init(1)};
  Store store;
  execute(ops, store, 0, tags.size());
  int next = 2;
  Regex t = teval(mk_bank(1, body), 0, next, mode);
  return settle(t, std::move(ops), tags, store, 0);
}

MemoryStep step(const Regex& state, Symbol c, Position p, const TagTable& tags, const Store& store, TevalMode mode) {
  int next = max_bank(state) + 1;
  Regex d = derive(state, c, p, next);
  Regex t = teval(d, p + 1, next, mode);
  return settle(t, {}, tags, store, p);
}

Final finalize(const Regex& state, const TagTable& tags, const Store& store, Position p) {
  Final out;
  Regex best;
  Updates best_writes;
  std::vector<Position> best_contents;
  for (const Regex& t : terms_of(state)) {
    if (t->kind != Kind::Bank || !t->nullable) continue;
    std::vector<Position> base = term_contents(t, store, tags.size());
    for (const Updates& u : null_alts(t->kids[0], p)) {
      std::vector<Position> c = base;
      for (const SlotUpdate& w : u) c[static_cast<std::size_t>(w.slot)] = w.value;
      if (!best || bank_compare(c, best_contents, tags) > 0) {
        best = t;
        best_writes = compose(t->pending, u);
        best_contents = std::move(c);
      }
    }
  }
  if (!best) return out;
  out.matched = true;
  out.bank = best->bank;
  if (best->bank != best->origin) out.ops.push_back(MemoryOp::copy(best->bank, best->origin));
  for (const SlotUpdate& w : best_writes) out.ops.push_back(MemoryOp::set(best->bank, w.slot, w.value - p));
  return out;
}

MatchResult extract_submatches(const std::vector<Position>& slots, const TagTable& tags,
                               const std::vector<std::size_t>& origin_map, std::size_t stream_length) {
  MatchResult m;
  m.matched = true;
  m.bank = slots;
  m.stream_length = stream_length;
  auto at = [&](Position p) {
    auto i = static_cast<std::size_t>(p);
    return origin_map.empty() ? i : origin_map[std::min(i, origin_map.size() - 1)];
  };
  m.groups.resize(static_cast<std::size_t>(tags.groups) + 1);
  for (int g = 0; g <= tags.groups; ++g) {
    auto pair = tags.group_tags(g);
    if (!pair) {
      if (g == 0) m.groups[0] = Span{at(0), at(static_cast<Position>(stream_length))};
      continue;
    }
    Position s = slots[static_cast<std::size_t>(pair->first)];
    Position e = slots[static_cast<std::size_t>(pair->second)];
    if (s == kUnset || e == kUnset || e < s) continue;
    m.groups[static_cast<std::size_t>(g)] = Span{at(s), at(e)};
  }
  return m;
}

Program prepare(const Parsed& parsed, MatchMode mode) {
  Program prog{parsed.regex, parsed.tags, mode};
  if (mode == MatchMode::Raw) return prog;
  TagTable& t = prog.tags;
  int n = t.size();
  int s = n, e = n + 1;
  t.entries.push_back({TagKind::Early, e, TagSource::WholeMatch, 0, true});
  t.entries.push_back({TagKind::Late, s, TagSource::WholeMatch, 0, false});
  std::vector<int> inner(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) inner[static_cast<std::size_t>(i)] = i;
  t.order.clear();
  t.order.push_back(s);
  if (t.policy == Policy::Posix) {
    t.order.push_back(e);
    t.order.insert(t.order.end(), inner.begin(), inner.end());
  } else {
    t.order.insert(t.order.end(), inner.begin(), inner.end());
    t.order.push_back(e);
  }
  Regex core = mk_concat({mk_tag(TagKind::Early, s), parsed.regex, mk_tag(TagKind::Late, e)});
  switch (mode) {
    case MatchMode::Whole:
      prog.body = mk_concat(core, mk_star(mk_class(SymbolSet::anchors(kAllAnchors))));
      break;
    case MatchMode::Prefix: prog.body = mk_concat(core, mk_any_star()); break;
    case MatchMode::Search: prog.body = mk_concat({mk_any_star(), core, mk_any_star()}); break;
    case MatchMode::Raw: break;
  }
  return prog;
}

const char* mode_name(MatchMode m) {
  switch (m) {
    case MatchMode::Whole: return "whole";
    case MatchMode::Prefix: return "prefix";
    case MatchMode::Search: return "search";
    case MatchMode::Raw: return "raw";
  }
  return "?";
}

std::optional<MatchMode> mode_from_name(const std::string& name) {
  if (name == "whole") return MatchMode::Whole;
  if (name == "prefix") return MatchMode::Prefix;
  if (name == "search") return MatchMode::Search;
  if (name == "raw") return MatchMode::Raw;
  return std::nullopt;
}

std::string to_json(const MatchResult& m) {
  nlohmann::json j;
  j["matched"] = m.matched;
  j["groups"] = nlohmann::json::array();
  if (m.matched)
    for (const auto& g : m.groups) {
      if (g)
        j["groups"].push_back({{"start", g->start}, {"end", g->end}});
      else
        j["groups"].push_back(nullptr);
    }
  return j.dump();
}

}  // namespace drx
