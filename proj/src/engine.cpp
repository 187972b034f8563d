#include "engine.h"

namespace drx {

bool match_lazy(const Regex& r, const std::vector<Symbol>& s) {
  Regex cur = erase_tags(r);
  for (Symbol c : s) {
    cur = derive_plain(cur, c);
    if (cur->kind == Kind::Empty) return false;
  }
  return cur->nullable;
}

bool match_lazy(const Regex& r, const std::string& text) { return match_lazy(r, decode_utf8(text)); }

MatchResult match_stream(const Regex& body, const TagTable& tags, const AnchoredStream& stream,
                         const MatchOptions& opt) {
  const int slots = tags.size();
  Store store;
  MemoryStep cur = start_state(body, tags, opt.teval);
  execute(cur.ops, store, 0, slots);
  Position p = 0;
  for (Symbol c : stream.symbols) {
    cur = step(cur.state, c, p, tags, store, opt.teval);
    execute(cur.ops, store, p, slots);
    ++p;
    if (cur.state->kind == Kind::Empty) return {};
  }
  Final fin = finalize(cur.state, tags, store, p);
  if (!fin.matched) return {};
  execute(fin.ops, store, p, slots);
  static const std::vector<std::size_t> identity;
  const auto& map = opt.stream_offsets ? identity : stream.origin_map;
  return extract_submatches(store[static_cast<std::size_t>(fin.bank)], tags, map, stream.symbols.size());
}

MatchResult match_full(const Regex& body, const TagTable& tags, const std::string& text, const MatchOptions& opt) {
  AnchoredStream s = opt.anchors ? inject_anchors(text, opt.word) : raw_stream(text);
  return match_stream(body, tags, s, opt);
}

std::vector<TraceStep> trace_lazy(const Regex& r, const std::vector<Symbol>& s) {
  std::vector<TraceStep> out;
  Regex cur = erase_tags(r);
  out.push_back({"", to_string(cur), ""});
  for (Symbol c : s) {
    cur = derive_plain(cur, c);
    out.push_back({symbol_text(c), to_string(cur), ""});
    if (cur->kind == Kind::Empty) break;
  }
  return out;
}

std::vector<TraceStep> trace_full(const Regex& body, const TagTable& tags, const AnchoredStream& stream,
                                  TevalMode mode) {
  std::vector<TraceStep> out;
  const int slots = tags.size();
  Store store;
  MemoryStep cur = start_state(body, tags, mode);
  execute(cur.ops, store, 0, slots);
  out.push_back({"", to_string(cur.state), to_string(cur.ops)});
  Position p = 0;
  for (Symbol c : stream.symbols) {
    cur = step(cur.state, c, p, tags, store, mode);
    execute(cur.ops, store, p, slots);
    out.push_back({stream_text({c}), to_string(cur.state), to_string(cur.ops)});
    ++p;
    if (cur.state->kind == Kind::Empty) break;
  }
  return out;
}

}  // namespace drx
