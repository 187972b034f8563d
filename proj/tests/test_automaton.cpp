#include <gtest/gtest.h>

#include <random>
#include <set>

#include "automaton.h"
#include "gen.h"
#include "json.hpp"
#include "oracle.h"
#include "support.h"

using namespace drx;
using support::re;

namespace {

const Alphabet kAbc = SymbolSet::chars("abc");
const Alphabet kAb = SymbolSet::chars("ab");

std::string spans(const MatchResult& m, const std::string& text) {
  if (!m.matched) return "no match";
  std::string s;
  for (const auto& g : m.groups) s += (g ? "[" + text.substr(g->start, g->end - g->start) + "]" : "-");
  return s;
}

// Banks that are certainly initialised on entry to each state, over every
// path from the start. Returns the first violation found, or "".
std::string undefined_bank_use(const TaggedDfa& m) {
  std::vector<std::optional<std::set<int>>> in(static_cast<std::size_t>(m.size()));
  std::string problem;
  auto run = [&](const std::vector<MemoryOp>& ops, std::set<int> defined, const std::string& where) {
    for (const MemoryOp& op : ops) {
      if (op.op == MemoryOp::Op::Copy && !defined.count(op.src))
        problem = where + ": copy from undefined bank " + std::to_string(op.src);
      if (op.op == MemoryOp::Op::Set && !defined.count(op.bank))
        problem = where + ": write to undefined bank " + std::to_string(op.bank);
      if (op.bank >= m.bank_count || op.src >= m.bank_count) problem = where + ": bank id out of range";
      if (op.op != MemoryOp::Op::Set) defined.insert(op.bank);
    }
    return defined;
  };
  in[0] = run(m.initial, {}, "initial ops");
  bool changed = true;
  while (changed && problem.empty()) {
    changed = false;
    for (int q = 0; q < m.size(); ++q) {
      if (!in[static_cast<std::size_t>(q)]) continue;
      for (const Edge& e : m.edges[static_cast<std::size_t>(q)]) {
        std::set<int> out = run(e.ops, *in[static_cast<std::size_t>(q)], "edge from " + std::to_string(q));
        auto& dst = in[static_cast<std::size_t>(e.target)];
        if (!dst) {
          dst = out;
          changed = true;
          continue;
        }
        std::set<int> meet;
        for (int b : *dst)
          if (out.count(b)) meet.insert(b);
        if (meet != *dst) {
          dst = meet;
          changed = true;
        }
      }
    }
  }
  for (int q = 0; q < m.size() && problem.empty(); ++q) {
    const auto& defined = in[static_cast<std::size_t>(q)];
    if (!defined) continue;
    for (const Regex& t : terms_of(m.states[static_cast<std::size_t>(q)]))
      if (t->kind == Kind::Bank && !defined->count(t->bank))
        problem = "state " + std::to_string(q) + " reads undefined bank " + std::to_string(t->bank);
    if (m.accepting[static_cast<std::size_t>(q)]) {
      std::set<int> after = run(m.final_ops[static_cast<std::size_t>(q)], *defined, "final ops");
      if (!after.count(m.result_bank[static_cast<std::size_t>(q)]))
        problem = "state " + std::to_string(q) + " reports undefined bank";
    }
  }
  return problem;
}

}  // namespace

TEST(MakeDfa, AbStar) {
  Dfa m = make_dfa(re("ab*"), kAbc);
  ASSERT_EQ(m.size(), 3);
  int q1 = m.edge(0, 'a')->target;
  EXPECT_TRUE(m.accepting[static_cast<std::size_t>(q1)]);
  EXPECT_EQ(m.edge(q1, 'b')->target, q1);
  EXPECT_FALSE(m.accepting[0]);
}

TEST(MakeDfa, SimilarityLeavesTwoAcceptingStates) {
  Dfa m = make_dfa(re("(?:a+ab+b)*"), kAbc);
  ASSERT_EQ(m.size(), 3);
  EXPECT_EQ(std::count(m.accepting.begin(), m.accepting.end(), true), 2);
}

TEST(MakeDfa, EmptyLanguage) {
  Dfa m = make_dfa(mk_empty(), kAbc);
  ASSERT_EQ(m.size(), 1);
  EXPECT_FALSE(m.accepting[0]);
  EXPECT_EQ(m.edge(0, 'a')->target, 0);
}

TEST(MakeDfa, EdgesPartitionTheAlphabet) {
  gen::Generator g(31, gen::plain_abc());
  for (int i = 0; i < 100; ++i) {
    Dfa m = make_dfa(re(g.pattern(5)), ascii_alphabet(true));
    for (const auto& edges : m.edges) {
      SymbolSet u;
      for (std::size_t x = 0; x < edges.size(); ++x) {
        for (std::size_t y = x + 1; y < edges.size(); ++y) ASSERT_TRUE((edges[x].label & edges[y].label).empty());
        u = u | edges[x].label;
      }
      ASSERT_TRUE(u == ascii_alphabet(true));
    }
  }
}

TEST(MakeDfa, StateBoundIsReported) {
  std::string p = "(?:a+b)*a";
  for (int i = 0; i < 9; ++i) p += "(?:a+b)";
  try {
    make_dfa(re(p), kAb, 100);
    FAIL() << "no error";
  } catch (const StateBoundError& e) {
    EXPECT_EQ(e.bound, 100u);
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
}

TEST(MakeDfa, ExponentialWitness) {
  for (int m = 2; m <= 4; ++m) {
    std::string p = "(?:a+b)*a";
    for (int i = 1; i < m; ++i) p += "(?:a+b)";
    EXPECT_GE(make_dfa(re(p), kAb).size(), 1 << m) << m;
  }
}

TEST(TaggedDfa, TwoGreedyStarsThenA) {
  Parsed p = parse("(a*)(a*)a");
  TaggedDfa m = make_tagged_dfa(p.regex, p.tags, kAb);
  ASSERT_EQ(m.size(), 3);
  EXPECT_EQ(m.initial, (std::vector<MemoryOp>{MemoryOp::init(1), MemoryOp::set(1, 0, 0)}));
  const Edge* first = m.edge(0, 'a');
  int q1 = first->target;
  ASSERT_TRUE(m.accepting[static_cast<std::size_t>(q1)]);
  EXPECT_EQ(m.result_bank[static_cast<std::size_t>(q1)], 3);
  const Edge* loop = m.edge(q1, 'a');
  EXPECT_EQ(loop->target, q1);
  EXPECT_EQ(to_string(loop->ops),
            "β2 ← β1; β2.slot1 ← p; β2.slot2 ← p; β3 ← β1; β3.slot1 ← p; β3.slot2 ← p; β3.slot3 ← p");
  std::vector<MemoryOp> a = first->ops, b = loop->ops;
  std::sort(a.begin(), a.end(), [](const MemoryOp& x, const MemoryOp& y) { return to_string(x) < to_string(y); });
  std::sort(b.begin(), b.end(), [](const MemoryOp& x, const MemoryOp& y) { return to_string(x) < to_string(y); });
  EXPECT_EQ(a, b);
  EXPECT_TRUE(m.edge(0, 'b')->ops.empty());
  EXPECT_FALSE(m.accepting[static_cast<std::size_t>(m.edge(0, 'b')->target)]);

  MatchOptions raw;
  raw.anchors = false;
  EXPECT_EQ(spans(tagged_dfa_match(m, "aa", raw), "aa"), "[aa][a][]");
  EXPECT_EQ(spans(tagged_dfa_match(m, "abb", raw), "abb"), "no match");
}

TEST(TaggedDfa, LazyVariantSharesTheGraph) {
  Parsed greedy = parse("(a*)(a*)a"), lazy = parse("(?la*)(?la*)a");
  TaggedDfa g = make_tagged_dfa(greedy.regex, greedy.tags, kAb), l = make_tagged_dfa(lazy.regex, lazy.tags, kAb);
  ASSERT_EQ(g.size(), l.size());
  for (int q = 0; q < g.size(); ++q) {
    EXPECT_EQ(g.accepting[static_cast<std::size_t>(q)], l.accepting[static_cast<std::size_t>(q)]);
    for (Symbol c : support::sym("ab")) EXPECT_EQ(g.edge(q, c)->target, l.edge(q, c)->target);
  }
  int q1 = l.edge(0, 'a')->target;
  EXPECT_NE(to_string(g.edge(q1, 'a')->ops), to_string(l.edge(q1, 'a')->ops));
  MatchOptions raw;
  raw.anchors = false;
  EXPECT_EQ(spans(tagged_dfa_match(l, "aa", raw), "aa"), "[aa][][a]");
}

TEST(TaggedDfa, TagFreeMatchesThePlainDfa) {
  gen::Generator g(32, gen::plain_abc());
  for (int i = 0; i < 100; ++i) {
    Regex r = re(g.pattern(5));
    Dfa d = make_dfa(r, kAbc);
    TaggedDfa t = make_tagged_dfa(r, TagTable{}, kAbc);
    ASSERT_EQ(d.size(), t.size()) << to_string(r);
    EXPECT_TRUE(t.initial.empty() || t.initial == std::vector<MemoryOp>{MemoryOp::init(1)});
    for (int q = 0; q < d.size(); ++q) {
      ASSERT_EQ(d.accepting[static_cast<std::size_t>(q)], t.accepting[static_cast<std::size_t>(q)]);
      for (Symbol c : support::sym("abc")) {
        ASSERT_EQ(d.edge(q, c)->target, t.edge(q, c)->target);
        ASSERT_TRUE(t.edge(q, c)->ops.empty());
      }
    }
  }
}

TEST(TaggedDfa, BanksAreDefinedBeforeUse) {
  gen::Generator g(33, gen::posix_ab(3));
  for (int i = 0; i < 400; ++i) {
    std::string p = g.pattern(3 + i % 4);
    Program prog = prepare(parse(p), i % 2 ? MatchMode::Whole : MatchMode::Search);
    TaggedDfa m = make_tagged_dfa(prog.body, prog.tags, ascii_alphabet(true));
    ASSERT_EQ(undefined_bank_use(m), "") << p;
  }
}

TEST(TaggedDfa, AgreesWithDerivativesOnAnchoredInput) {
  gen::Generator g(34, gen::posix_ab(2));
  auto ws = support::words("ab", 3);
  for (int i = 0; i < 300; ++i) {
    std::string p = g.pattern(3 + i % 3);
    Program prog = prepare(parse(p), MatchMode::Whole);
    TaggedDfa m = make_tagged_dfa(prog.body, prog.tags, ascii_alphabet(true));
    for (const oracle::Word& w : ws) {
      std::string t = support::text(w);
      ASSERT_EQ(spans(tagged_dfa_match(m, t), t), spans(match_full(prog.body, prog.tags, t), t)) << p << " on " << t;
    }
  }
}

TEST(DfaMatch, Examples) {
  Dfa m = make_dfa(re("ab*"), kAbc);
  EXPECT_TRUE(dfa_match(m, "abb"));
  EXPECT_FALSE(dfa_match(m, "ba"));
  EXPECT_FALSE(dfa_match(m, ""));
  EXPECT_THROW(dfa_match(m, "abz"), AlphabetError);
}

TEST(DfaMatch, AgreesWithLazyMatching) {
  Regex r = re("(?:a+bb*a)*c*");
  Dfa m = make_dfa(r, kAbc);
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::string s;
    for (int k = static_cast<int>(rng() % 9); k > 0; --k) s.push_back("abc"[rng() % 3]);
    EXPECT_EQ(dfa_match(m, s), match_lazy(r, s)) << s;
  }
}

TEST(DfaToRegex, AllSymbolsLoop) {
  Dfa m;
  m.alphabet = kAb;
  m.states = {mk_eps()};
  m.accepting = {true};
  m.edges = {{Edge{kAb, 0, {}}}};
  Regex r = dfa_to_regex(m);
  for (const oracle::Word& w : support::words("ab", 6)) EXPECT_TRUE(oracle::member_naive(r, w));
}

TEST(DfaToRegex, KleeneRoundTrip) {
  gen::Generator g(35, gen::plain_abc());
  std::vector<Symbol> abc = support::sym("abc");
  for (int i = 0; i < 40; ++i) {
    Regex r = re(g.pattern(4));
    Regex back = dfa_to_regex(make_dfa(r, kAbc));
    oracle::LanguageSample a = oracle::enumerate_language(r, abc, 7), b = oracle::enumerate_language(back, abc, 7);
    ASSERT_EQ(a.members, b.members) << to_string(r) << " came back as " << to_string(back);
  }
}

TEST(CheckMinimal, Examples) {
  EXPECT_TRUE(check_minimal(make_dfa(re("ab*"), kAbc)).empty());
  EXPECT_TRUE(check_minimal(make_dfa(mk_empty(), kAbc)).empty());
  auto pairs = check_minimal(make_dfa(re("(?:a+ab+b)*"), kAbc));
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first, 0);
}

TEST(Export, DotForAbStar) {
  std::string dot = to_dot(make_dfa(re("ab*"), kAbc));
  EXPECT_EQ(dot.rfind("digraph dfa {", 0), 0u);
  EXPECT_NE(dot.find("q0 [label=\"0\"];"), std::string::npos);
  EXPECT_NE(dot.find("q1 [label=\"1\", shape=doublecircle];"), std::string::npos);
  EXPECT_NE(dot.find("start -> q0;"), std::string::npos);
  EXPECT_NE(dot.find("q1 -> q1 [label=\"b\"];"), std::string::npos);
  EXPECT_EQ(dot.find("q3"), std::string::npos);
}

TEST(Export, JsonMirrorsTheMachine) {
  Parsed p = parse("(a*)(a*)a");
  TaggedDfa m = make_tagged_dfa(p.regex, p.tags, kAb);
  nlohmann::json j = nlohmann::json::parse(to_json(m));
  EXPECT_EQ(j["bank_count"], m.bank_count);
  ASSERT_EQ(j["states"].size(), 3u);
  EXPECT_EQ(j["initial_ops"].size(), 2u);
  EXPECT_EQ(j["initial_ops"][0]["op"], "init");
  int q1 = m.edge(0, 'a')->target;
  EXPECT_EQ(j["states"][q1]["result_bank"], 3);
  EXPECT_TRUE(j["states"][0]["result_bank"].is_null());
  EXPECT_EQ(j["tags"].size(), 4u);
  EXPECT_EQ(j["transitions"].size(), 5u);
  for (const auto& t : j["transitions"]) EXPECT_TRUE(t.contains("ops"));
}
