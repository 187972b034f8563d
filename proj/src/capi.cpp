#include "drx/drx.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "automaton.h"

using namespace drx;

struct drx_pattern {
  drx_options opt;
  Parsed parsed;
  Program prog;
  Alphabet alphabet;
};

struct drx_dfa {
  drx_options opt;
  bool tagged = false;
  Dfa plain;
  TaggedDfa machine;
};

namespace {

thread_local std::string last_error;
thread_local long long last_offset = -1;

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class F>
drx_status guard(F&& f) {
  last_error.clear();
  last_offset = -1;
  try {
    f();
    return DRX_OK;
  } catch (const SyntaxError& e) {
    last_error = e.what();
    last_offset = static_cast<long long>(e.position);
    return DRX_ERR_SYNTAX;
  } catch (const StateBoundError& e) {
    last_error = e.what();
    return DRX_ERR_STATE_BOUND;
  } catch (const AlphabetError& e) {
    last_error = e.what();
    return DRX_ERR_ALPHABET;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return DRX_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DRX_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return DRX_ERR_INTERNAL;
  }
}

void need(bool ok, const char* what) {
  if (!ok) throw ArgumentError(what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string text_of(const char* text, size_t len) { return len ? std::string(text, len) : std::string(); }

TevalMode teval_mode(const drx_options& o) { return o.collapse_teval ? TevalMode::Collapse : TevalMode::Distribute; }

MatchOptions match_options(const drx_options& o) {
  MatchOptions m;
  m.teval = teval_mode(o);
  m.anchors = o.anchors != 0;
  m.stream_offsets = o.stream_offsets != 0;
  return m;
}

AnchoredStream stream_of(const drx_options& o, const std::string& text) {
  return o.anchors ? inject_anchors(text) : raw_stream(text);
}

void fill(const MatchResult& r, int* matched, drx_span* groups, size_t cap) {
  *matched = r.matched ? 1 : 0;
  for (size_t i = 0; i < cap; ++i) {
    groups[i] = {-1, -1};
    if (i < r.groups.size() && r.groups[i])
      groups[i] = {static_cast<long long>(r.groups[i]->start), static_cast<long long>(r.groups[i]->end)};
  }
}

}  // namespace

extern "C" {

void drx_options_init(drx_options* opt) {
  if (!opt) return;
  *opt = drx_options{};
  opt->policy = DRX_POLICY_POSIX;
  opt->mode = DRX_MODE_WHOLE;
  opt->anchors = 1;
}

const char* drx_last_error(void) { return last_error.c_str(); }
long long drx_last_error_offset(void) { return last_offset; }

const char* drx_status_name(drx_status s) {
  switch (s) {
    case DRX_OK: return "ok";
    case DRX_ERR_SYNTAX: return "syntax error";
    case DRX_ERR_STATE_BOUND: return "state bound exceeded";
    case DRX_ERR_ARGUMENT: return "invalid argument";
    case DRX_ERR_ALPHABET: return "symbol outside alphabet";
    case DRX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void drx_string_free(char* s) { std::free(s); }

drx_status drx_compile(const char* pattern, size_t len, const drx_options* opt, drx_pattern** out) {
  return guard([&] {
    need(out, "out is null");
    *out = nullptr;
    need(pattern || len == 0, "pattern is null");
    auto p = std::make_unique<drx_pattern>();
    if (opt)
      p->opt = *opt;
    else
      drx_options_init(&p->opt);
    need(p->opt.policy >= DRX_POLICY_POSIX && p->opt.policy <= DRX_POLICY_POSTORDER, "unknown policy");
    need(p->opt.mode >= DRX_MODE_WHOLE && p->opt.mode <= DRX_MODE_RAW, "unknown mode");
    ParseOptions po;
    po.policy = static_cast<Policy>(p->opt.policy);
    po.subpattern_tags = p->opt.subpattern_tags != 0;
    po.ascii = p->opt.ascii != 0;
    p->parsed = parse(text_of(pattern, len), po);
    p->prog = prepare(p->parsed, static_cast<MatchMode>(p->opt.mode));
    bool anchors = p->opt.anchors != 0;
    p->alphabet = p->opt.ascii ? ascii_alphabet(anchors) : unicode_alphabet(anchors);
    *out = p.release();
  });
}

void drx_pattern_free(drx_pattern* p) { delete p; }

int drx_pattern_groups(const drx_pattern* p) { return p ? p->parsed.tags.groups : 0; }

drx_status drx_pattern_text(const drx_pattern* p, char** out) {
  return guard([&] {
    need(p && out, "null argument");
    *out = dup(to_string(p->parsed.regex));
  });
}

drx_status drx_match(const drx_pattern* p, const char* text, size_t len, int* matched) {
  return guard([&] {
    need(p && matched && (text || len == 0), "null argument");
    *matched = match_lazy(p->prog.body, stream_of(p->opt, text_of(text, len)).symbols) ? 1 : 0;
  });
}

drx_status drx_submatch(const drx_pattern* p, const char* text, size_t len, int* matched, drx_span* groups,
                        size_t cap) {
  return guard([&] {
    need(p && matched && (text || len == 0) && (groups || cap == 0), "null argument");
    fill(match_full(p->prog.body, p->prog.tags, text_of(text, len), match_options(p->opt)), matched, groups, cap);
  });
}

drx_status drx_submatch_json(const drx_pattern* p, const char* text, size_t len, char** json) {
  return guard([&] {
    need(p && json && (text || len == 0), "null argument");
    *json = dup(to_json(match_full(p->prog.body, p->prog.tags, text_of(text, len), match_options(p->opt))));
  });
}

drx_status drx_trace(const drx_pattern* p, const char* text, size_t len, char** out) {
  return guard([&] {
    need(p && out && (text || len == 0), "null argument");
    AnchoredStream s = stream_of(p->opt, text_of(text, len));
    std::vector<TraceStep> steps;
    bool accepted;
    if (p->prog.tags.size() == 0) {
      steps = trace_lazy(p->prog.body, s.symbols);
      accepted = match_lazy(p->prog.body, s.symbols);
    } else {
      steps = trace_full(p->prog.body, p->prog.tags, s, teval_mode(p->opt));
      accepted = match_stream(p->prog.body, p->prog.tags, s, match_options(p->opt)).matched;
    }
    // Each line reads "expression ∼ remaining input", as a chain of
    // equivalent membership questions.
    std::ostringstream os;
    std::size_t consumed = 0;
    for (const TraceStep& st : steps) {
      if (!st.consumed.empty()) ++consumed;
      std::vector<Symbol> rest(s.symbols.begin() + static_cast<std::ptrdiff_t>(consumed), s.symbols.end());
      std::string remaining = rest.empty() ? "ε" : stream_text(rest);
      os << (st.consumed.empty() ? "  " : "⇔ ") << st.expression << " ∼ " << remaining;
      if (!st.ops.empty()) os << "    [" << st.ops << "]";
      os << "\n";
    }
    os << (accepted ? "match" : "no match") << "\n";
    *out = dup(os.str());
  });
}

drx_status drx_dfa_build(const drx_pattern* p, int tagged, drx_dfa** out) {
  return guard([&] {
    need(p && out, "null argument");
    *out = nullptr;
    auto d = std::make_unique<drx_dfa>();
    d->opt = p->opt;
    d->tagged = tagged != 0;
    std::size_t bound = p->opt.state_bound ? p->opt.state_bound : kDefaultStateBound;
    if (d->tagged)
      d->machine = make_tagged_dfa(p->prog.body, p->prog.tags, p->alphabet, teval_mode(p->opt), bound);
    else
      d->plain = make_dfa(p->prog.body, p->alphabet, bound);
    *out = d.release();
  });
}

void drx_dfa_free(drx_dfa* d) { delete d; }

size_t drx_dfa_states(const drx_dfa* d) {
  if (!d) return 0;
  return d->tagged ? d->machine.states.size() : d->plain.states.size();
}

drx_status drx_dfa_match(const drx_dfa* d, const char* text, size_t len, int* matched) {
  return guard([&] {
    need(d && matched && (text || len == 0), "null argument");
    AnchoredStream s = stream_of(d->opt, text_of(text, len));
    *matched = d->tagged ? tagged_dfa_run(d->machine, s).matched : dfa_match(d->plain, s.symbols);
  });
}

drx_status drx_dfa_submatch(const drx_dfa* d, const char* text, size_t len, int* matched, drx_span* groups,
                            size_t cap) {
  return guard([&] {
    need(d && matched && (text || len == 0) && (groups || cap == 0), "null argument");
    need(d->tagged, "submatches need a tagged DFA");
    fill(tagged_dfa_match(d->machine, text_of(text, len), match_options(d->opt)), matched, groups, cap);
  });
}

drx_status drx_dfa_submatch_json(const drx_dfa* d, const char* text, size_t len, char** json) {
  return guard([&] {
    need(d && json && (text || len == 0), "null argument");
    need(d->tagged, "submatches need a tagged DFA");
    *json = dup(to_json(tagged_dfa_match(d->machine, text_of(text, len), match_options(d->opt))));
  });
}

drx_status drx_dfa_export(const drx_dfa* d, const char* format, char** out) {
  return guard([&] {
    need(d && format && out, "null argument");
    std::string f = format;
    need(f == "dot" || f == "json", "format must be dot or json");
    if (d->tagged)
      *out = dup(f == "dot" ? to_dot(d->machine) : to_json(d->machine));
    else
      *out = dup(f == "dot" ? to_dot(d->plain) : to_json(d->plain));
  });
}

}  // extern "C"
