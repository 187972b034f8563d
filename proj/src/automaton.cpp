#include "automaton.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace drx {

const Edge* Dfa::edge(int q, Symbol s) const {
  for (const Edge& e : edges[static_cast<std::size_t>(q)])
    if (e.label.contains(s)) return &e;
  return nullptr;
}

namespace {

// Canonical expressions up to bank identities, mapped to state ids.
class StateIndex {
 public:
  int find(const Regex& r) const {
    std::vector<int> all = candidates(r);
    return all.empty() ? -1 : all.front();
  }
  std::vector<int> candidates(const Regex& r) const {
    std::vector<int> out;
    auto it = by_hash_.find(r->hash);
    if (it == by_hash_.end()) return out;
    for (int q : it->second)
      if (compare((*states_)[static_cast<std::size_t>(q)], r) == 0) out.push_back(q);
    return out;
  }
  void add(const Regex& r, int q) { by_hash_[r->hash].push_back(q); }
  explicit StateIndex(const std::vector<Regex>* states) : states_(states) {}

 private:
  const std::vector<Regex>* states_;
  std::unordered_map<std::size_t, std::vector<int>> by_hash_;
};

SymbolPartition blocks_of(const Regex& r, const Alphabet& alphabet) { return refine(derivative_classes(r), {alphabet}); }

// Edges of one state to the same target with the same program share a label.
std::vector<Edge> merge_edges(std::vector<Edge> edges) {
  std::vector<Edge> out;
  for (Edge& e : edges) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Edge& o) { return o.target == e.target && o.ops == e.ops; });
    if (it == out.end())
      out.push_back(std::move(e));
    else
      it->label = it->label | e.label;
  }
  return out;
}

// For each slot, the relative order of its values across the live banks
// and the current position: 1 for unset, otherwise the dense rank.
// Disambiguation only compares a slot with the same slot of another bank
// or with a value written now, so two stores with the same order type make
// the same choices.
std::vector<int> order_type(const Regex& state, const Store& store, Position p, int slots) {
  std::vector<std::vector<Position>> rows;
  for (const Regex& t : terms_of(state))
    if (t->kind == Kind::Bank) rows.push_back(term_contents(t, store, slots));
  std::vector<int> key(rows.size() * static_cast<std::size_t>(slots), 1);
  for (int k = 0; k < slots; ++k) {
    auto col = static_cast<std::size_t>(k);
    std::vector<Position> values{p};
    for (const auto& row : rows)
      if (row[col] != kUnset) values.push_back(row[col]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Position v = rows[i][col];
      if (v == kUnset) continue;
      // p is the largest value, so ranks are counted down from it: 0 for
      // a value written at p, -1 for the next older one, and so on.
      key[i * static_cast<std::size_t>(slots) + col] =
          static_cast<int>(std::lower_bound(values.begin(), values.end(), v) - values.end()) + 1;
    }
  }
  return key;
}

}  // namespace

Dfa make_dfa(const Regex& r, const Alphabet& alphabet, std::size_t bound) {
  Dfa m;
  m.alphabet = alphabet;
  StateIndex index(&m.states);
  auto intern = [&](const Regex& s) {
    int q = index.find(s);
    if (q >= 0) return q;
    if (m.states.size() >= bound) throw StateBoundError(bound);
    q = m.size();
    m.states.push_back(s);
    m.accepting.push_back(s->nullable);
    m.edges.emplace_back();
    index.add(s, q);
    return q;
  };
  intern(erase_tags(r));
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    std::vector<Edge> edges;
    for (const SymbolSet& block : blocks_of(m.states[q], alphabet)) {
      int t = intern(derive_plain(m.states[q], block.first()));
      edges.push_back({block, t, {}});
    }
    m.edges[q] = merge_edges(std::move(edges));
  }
  return m;
}

TaggedDfa make_tagged_dfa(const Regex& body, const TagTable& tags, const Alphabet& alphabet, TevalMode mode,
                          std::size_t bound) {
  TaggedDfa m;
  m.alphabet = alphabet;
  m.tags = tags;
  m.teval = mode;
  const int slots = tags.size();
  StateIndex index(&m.states);
  // Each state is explored with the memory of the path that discovered it.
  // States are told apart by expression and by the order type of that
  // memory, so the discovery path is representative of every path.
  std::vector<Store> stores;
  std::vector<Position> depth;
  std::vector<std::vector<int>> types;
  int max_bank_id = 0;
  auto note = [&](const std::vector<MemoryOp>& ops) {
    for (const MemoryOp& op : ops) max_bank_id = std::max({max_bank_id, op.bank, op.src});
  };

  MemoryStep start = start_state(body, tags, mode);
  m.initial = start.ops;
  note(m.initial);
  Store s0;
  execute(m.initial, s0, 0, slots);
  auto add = [&](const Regex& r, Store store, Position d) {
    if (m.states.size() >= bound) throw StateBoundError(bound);
    int q = m.size();
    m.states.push_back(r);
    m.edges.emplace_back();
    types.push_back(order_type(r, store, d, slots));
    stores.push_back(std::move(store));
    depth.push_back(d);
    index.add(r, q);
    return q;
  };
  add(start.state, std::move(s0), 0);

  std::deque<int> work{0};
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    const Regex state = m.states[static_cast<std::size_t>(q)];
    const Position p = depth[static_cast<std::size_t>(q)];
    std::vector<Edge> edges;
    for (const SymbolSet& block : blocks_of(state, alphabet)) {
      const Store& here = stores[static_cast<std::size_t>(q)];
      MemoryStep next = step(state, block.first(), p, tags, here, mode);
      int t = -1;
      std::vector<MemoryOp> ops;
      for (int c : index.candidates(next.state)) {
        std::vector<MemoryOp> moved = rearrange_memory(next.state, m.states[static_cast<std::size_t>(c)], next.ops);
        Store s = here;
        execute(moved, s, p, slots);
        if (order_type(m.states[static_cast<std::size_t>(c)], s, p + 1, slots) != types[static_cast<std::size_t>(c)])
          continue;
        t = c;
        ops = std::move(moved);
        break;
      }
      if (t < 0) {
        ops = next.ops;
        Store s = here;
        execute(ops, s, p, slots);
        t = add(next.state, std::move(s), p + 1);
        work.push_back(t);
      }
      note(ops);
      edges.push_back({block, t, std::move(ops)});
    }
    m.edges[static_cast<std::size_t>(q)] = merge_edges(std::move(edges));
  }

  const std::size_t n = m.states.size();
  m.accepting.assign(n, false);
  m.result_bank.assign(n, 0);
  m.final_ops.assign(n, {});
  for (std::size_t q = 0; q < n; ++q) {
    Final f = finalize(m.states[q], tags, stores[q], depth[q]);
    if (!f.matched) continue;
    m.accepting[q] = true;
    m.result_bank[q] = f.bank;
    m.final_ops[q] = f.ops;
    note(f.ops);
    max_bank_id = std::max(max_bank_id, f.bank);
  }
  m.bank_count = max_bank_id + 1;
  return m;
}

bool dfa_match(const Dfa& m, const std::vector<Symbol>& s) {
  int q = 0;
  for (Symbol c : s) {
    const Edge* e = m.edge(q, c);
    if (!e) throw AlphabetError(c);
    q = e->target;
  }
  return m.accepting[static_cast<std::size_t>(q)];
}

bool dfa_match(const Dfa& m, const std::string& text) { return dfa_match(m, decode_utf8(text)); }

MatchResult tagged_dfa_run(const TaggedDfa& m, const AnchoredStream& stream, bool stream_offsets) {
  const int slots = m.tags.size();
  Store store(static_cast<std::size_t>(m.bank_count));
  execute(m.initial, store, 0, slots);
  int q = 0;
  Position p = 0;
  for (Symbol c : stream.symbols) {
    const Edge* e = m.edge(q, c);
    if (!e) throw AlphabetError(c);
    execute(e->ops, store, p, slots);
    q = e->target;
    ++p;
  }
  auto qi = static_cast<std::size_t>(q);
  if (!m.accepting[qi]) return {};
  execute(m.final_ops[qi], store, p, slots);
  static const std::vector<std::size_t> identity;
  return extract_submatches(store[static_cast<std::size_t>(m.result_bank[qi])], m.tags,
                            stream_offsets ? identity : stream.origin_map, stream.symbols.size());
}

MatchResult tagged_dfa_match(const TaggedDfa& m, const std::string& text, const MatchOptions& opt) {
  AnchoredStream s = opt.anchors ? inject_anchors(text, opt.word) : raw_stream(text);
  return tagged_dfa_run(m, s, opt.stream_offsets);
}

Regex dfa_to_regex(const Dfa& m) {
  const std::size_t n = m.states.size();
  // X_i = Σ_j a[i][j] X_j + c[i]
  std::vector<std::vector<Regex>> a(n, std::vector<Regex>(n, mk_empty()));
  std::vector<Regex> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = m.accepting[i] ? mk_eps() : mk_empty();
    std::map<int, SymbolSet> labels;
    for (const Edge& e : m.edges[i]) labels[e.target] = labels[e.target] | e.label;
    for (const auto& [j, set] : labels) a[i][static_cast<std::size_t>(j)] = mk_class(set);
  }
  for (std::size_t k = n; k-- > 1;) {
    // Arden: X_k = a_kk X_k + rest  =>  X_k = a_kk* rest
    Regex loop = mk_star(a[k][k]);
    for (std::size_t i = 0; i < k; ++i) {
      if (a[i][k]->kind == Kind::Empty) continue;
      Regex via = mk_concat(a[i][k], loop);
      for (std::size_t j = 0; j < k; ++j) a[i][j] = mk_union(a[i][j], mk_concat(via, a[k][j]));
      c[i] = mk_union(c[i], mk_concat(via, c[k]));
      a[i][k] = mk_empty();
    }
  }
  return mk_concat(mk_star(a[0][0]), c[0]);
}

std::vector<std::pair<int, int>> check_minimal(const Dfa& m) {
  const int n = m.size();
  SymbolPartition atoms{m.alphabet};
  for (const auto& es : m.edges) {
    SymbolPartition labels;
    for (const Edge& e : es) labels.push_back(e.label);
    atoms = refine(atoms, labels);
  }
  std::vector<int> cls(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) cls[static_cast<std::size_t>(q)] = m.accepting[static_cast<std::size_t>(q)] ? 1 : 0;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{cls[static_cast<std::size_t>(q)]};
      for (const SymbolSet& atom : atoms) {
        const Edge* e = m.edge(q, atom.first());
        sig.push_back(e ? cls[static_cast<std::size_t>(e->target)] : -1);
      }
      auto it = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first;
      next[static_cast<std::size_t>(q)] = it->second;
    }
    bool stable = std::set<int>(next.begin(), next.end()).size() == std::set<int>(cls.begin(), cls.end()).size();
    cls = std::move(next);
    if (stable) break;
  }
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (cls[static_cast<std::size_t>(i)] == cls[static_cast<std::size_t>(j)]) out.emplace_back(i, j);
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string dot(const Dfa& m, const TaggedDfa* t) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
  for (int q = 0; q < m.size(); ++q) {
    auto qi = static_cast<std::size_t>(q);
    os << "  q" << q << " [label=\"" << q;
    if (t && t->accepting[qi]) os << "\\nβ" << t->result_bank[qi];
    os << "\"";
    if (m.accepting[qi]) os << ", shape=doublecircle";
    os << "];\n";
  }
  os << "  start -> q0";
  if (t && !t->initial.empty()) os << " [label=\"" << dot_escape(to_string(t->initial)) << "\"]";
  os << ";\n";
  for (int q = 0; q < m.size(); ++q)
    for (const Edge& e : m.edges[static_cast<std::size_t>(q)]) {
      std::string label = to_string(e.label);
      if (!e.ops.empty()) label += " / " + to_string(e.ops);
      os << "  q" << q << " -> q" << e.target << " [label=\"" << dot_escape(label) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

nlohmann::json set_json(const SymbolSet& s) {
  nlohmann::json ranges = nlohmann::json::array();
  for (const auto& r : s.ranges()) ranges.push_back({r.lo, r.hi});
  nlohmann::json anchors = nlohmann::json::array();
  for (int a = 0; a < kAnchorCount; ++a)
    if (s.anchor_mask() & (1u << a)) anchors.push_back(anchor_glyph(static_cast<Anchor>(a)));
  return {{"text", to_string(s)}, {"ranges", ranges}, {"anchors", anchors}};
}

nlohmann::json ops_json(const std::vector<MemoryOp>& ops) {
  nlohmann::json out = nlohmann::json::array();
  for (const MemoryOp& op : ops) {
    switch (op.op) {
      case MemoryOp::Op::Init: out.push_back({{"op", "init"}, {"bank", op.bank}}); break;
      case MemoryOp::Op::Copy: out.push_back({{"op", "copy"}, {"bank", op.bank}, {"src", op.src}}); break;
      case MemoryOp::Op::Set:
        out.push_back({{"op", "set"}, {"bank", op.bank}, {"slot", op.slot}, {"offset", op.offset}});
        break;
    }
  }
  return out;
}

nlohmann::json dfa_json(const Dfa& m, const TaggedDfa* t) {
  nlohmann::json j;
  j["alphabet"] = set_json(m.alphabet);
  j["states"] = nlohmann::json::array();
  j["transitions"] = nlohmann::json::array();
  for (int q = 0; q < m.size(); ++q) {
    auto qi = static_cast<std::size_t>(q);
    nlohmann::json s{{"id", q}, {"expression", to_string(m.states[qi])}, {"accepting", static_cast<bool>(m.accepting[qi])}};
    if (t) {
      s["result_bank"] = t->accepting[qi] ? nlohmann::json(t->result_bank[qi]) : nlohmann::json(nullptr);
      s["final_ops"] = ops_json(t->final_ops[qi]);
    }
    j["states"].push_back(s);
    for (const Edge& e : m.edges[qi]) {
      nlohmann::json tr{{"from", q}, {"to", e.target}, {"label", set_json(e.label)}};
      if (t) tr["ops"] = ops_json(e.ops);
      j["transitions"].push_back(tr);
    }
  }
  if (t) {
    j["initial_ops"] = ops_json(t->initial);
    j["bank_count"] = t->bank_count;
    j["policy"] = policy_name(t->tags.policy);
    nlohmann::json tags = nlohmann::json::array();
    for (const TagInfo& info : t->tags.entries) {
      const char* src = info.source == TagSource::UserGroup        ? "user-group"
                        : info.source == TagSource::ParserInserted ? "parser-inserted"
                                                                   : "whole-match";
      tags.push_back({{"kind", info.kind == TagKind::Early ? "early" : "late"},
                      {"partner", info.partner},
                      {"source", src},
                      {"group", info.group}});
    }
    j["tags"] = tags;
  }
  return j;
}

}  // namespace

std::string to_dot(const Dfa& m) { return dot(m, nullptr); }
std::string to_dot(const TaggedDfa& m) { return dot(m, &m); }
std::string to_json(const Dfa& m) { return dfa_json(m, nullptr).dump(2); }
std::string to_json(const TaggedDfa& m) { return dfa_json(m, &m).dump(2); }

}  // namespace drx
