// Exercises the shared library through its public header only.

#include <gtest/gtest.h>

#include <cstring>
#include <string>

#include "drx/drx.h"

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { drx_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

drx_pattern* compile(const char* pattern, const drx_options* opt = nullptr) {
  drx_pattern* p = nullptr;
  EXPECT_EQ(drx_compile(pattern, std::strlen(pattern), opt, &p), DRX_OK) << drx_last_error();
  return p;
}

int matches(const drx_pattern* p, const char* text) {
  int m = -1;
  EXPECT_EQ(drx_match(p, text, std::strlen(text), &m), DRX_OK);
  return m;
}

}  // namespace

TEST(CApi, CompileAndMatch) {
  drx_pattern* p = compile("ab*");
  EXPECT_EQ(matches(p, "abb"), 1);
  EXPECT_EQ(matches(p, ""), 0);
  EXPECT_EQ(drx_pattern_groups(p), 0);
  drx_pattern_free(p);
}

TEST(CApi, SyntaxErrorCarriesAnOffset) {
  drx_pattern* p = nullptr;
  EXPECT_EQ(drx_compile("(a", 2, nullptr, &p), DRX_ERR_SYNTAX);
  EXPECT_EQ(p, nullptr);
  EXPECT_EQ(drx_last_error_offset(), 2);
  EXPECT_NE(std::string(drx_last_error()).find("offset 2"), std::string::npos);
  EXPECT_STREQ(drx_status_name(DRX_ERR_SYNTAX), "syntax error");
}

TEST(CApi, NullArgumentsAreRejected) {
  drx_pattern* p = nullptr;
  EXPECT_EQ(drx_compile(nullptr, 1, nullptr, &p), DRX_ERR_ARGUMENT);
  EXPECT_EQ(drx_compile("a", 1, nullptr, nullptr), DRX_ERR_ARGUMENT);
  int m = 0;
  EXPECT_EQ(drx_match(nullptr, "a", 1, &m), DRX_ERR_ARGUMENT);
  // No bytes at all is the empty pattern, which matches only empty text.
  ASSERT_EQ(drx_compile(nullptr, 0, nullptr, &p), DRX_OK);
  EXPECT_EQ(matches(p, ""), 1);
  EXPECT_EQ(matches(p, "a"), 0);
  drx_pattern_free(p);
}

TEST(CApi, Submatches) {
  drx_pattern* p = compile("(a*)(a*)a");
  EXPECT_EQ(drx_pattern_groups(p), 2);
  drx_span g[3];
  int m = 0;
  ASSERT_EQ(drx_submatch(p, "aa", 2, &m, g, 3), DRX_OK);
  ASSERT_EQ(m, 1);
  EXPECT_EQ(g[0].start, 0);
  EXPECT_EQ(g[0].end, 2);
  EXPECT_EQ(g[1].end, 1);
  EXPECT_EQ(g[2].start, 1);
  EXPECT_EQ(g[2].end, 1);
  Owned json;
  ASSERT_EQ(drx_submatch_json(p, "aa", 2, &json.s), DRX_OK);
  EXPECT_EQ(json.str(),
            R"({"groups":[{"end":2,"start":0},{"end":1,"start":0},{"end":1,"start":1}],"matched":true})");
  drx_pattern_free(p);
}

TEST(CApi, UnmatchedGroupIsMinusOne) {
  drx_pattern* p = compile("(a)+b");
  drx_span g[2];
  int m = 0;
  ASSERT_EQ(drx_submatch(p, "b", 1, &m, g, 2), DRX_OK);
  ASSERT_EQ(m, 1);
  EXPECT_EQ(g[1].start, -1);
  EXPECT_EQ(g[1].end, -1);
  drx_pattern_free(p);
}

TEST(CApi, TaggedDfaAgreesWithDerivatives) {
  drx_pattern* p = compile("(a*)(a*)a");
  drx_dfa* d = nullptr;
  ASSERT_EQ(drx_dfa_build(p, 1, &d), DRX_OK);
  EXPECT_GT(drx_dfa_states(d), 0u);
  Owned a, b;
  ASSERT_EQ(drx_submatch_json(p, "aaa", 3, &a.s), DRX_OK);
  ASSERT_EQ(drx_dfa_submatch_json(d, "aaa", 3, &b.s), DRX_OK);
  EXPECT_EQ(a.str(), b.str());
  Owned dot, json;
  ASSERT_EQ(drx_dfa_export(d, "dot", &dot.s), DRX_OK);
  EXPECT_EQ(dot.str().rfind("digraph", 0), 0u);
  ASSERT_EQ(drx_dfa_export(d, "json", &json.s), DRX_OK);
  EXPECT_NE(json.str().find("\"bank_count\""), std::string::npos);
  Owned bad;
  EXPECT_EQ(drx_dfa_export(d, "svg", &bad.s), DRX_ERR_ARGUMENT);
  drx_dfa_free(d);
  drx_pattern_free(p);
}

TEST(CApi, PlainDfaRefusesSubmatches) {
  drx_pattern* p = compile("ab*");
  drx_dfa* d = nullptr;
  ASSERT_EQ(drx_dfa_build(p, 0, &d), DRX_OK);
  int m = 0;
  ASSERT_EQ(drx_dfa_match(d, "abb", 3, &m), DRX_OK);
  EXPECT_EQ(m, 1);
  drx_span g[1];
  EXPECT_EQ(drx_dfa_submatch(d, "abb", 3, &m, g, 1), DRX_ERR_ARGUMENT);
  drx_dfa_free(d);
  drx_pattern_free(p);
}

TEST(CApi, StateBound) {
  drx_options opt;
  drx_options_init(&opt);
  opt.state_bound = 4;
  drx_pattern* p = compile("(?:a+b)*a(?:a+b)(?:a+b)(?:a+b)", &opt);
  drx_dfa* d = nullptr;
  EXPECT_EQ(drx_dfa_build(p, 0, &d), DRX_ERR_STATE_BOUND);
  EXPECT_EQ(d, nullptr);
  drx_pattern_free(p);
}

TEST(CApi, AsciiAlphabetRejectsWideInput) {
  drx_options opt;
  drx_options_init(&opt);
  opt.ascii = 1;
  drx_pattern* p = compile("a*", &opt);
  drx_dfa* d = nullptr;
  ASSERT_EQ(drx_dfa_build(p, 0, &d), DRX_OK);
  int m = 0;
  EXPECT_EQ(drx_dfa_match(d, "\xc3\xa9", 2, &m), DRX_ERR_ALPHABET);
  drx_dfa_free(d);
  drx_pattern_free(p);
}

TEST(CApi, ModesAndTrace) {
  drx_options opt;
  drx_options_init(&opt);
  opt.mode = DRX_MODE_SEARCH;
  drx_pattern* p = compile("b", &opt);
  EXPECT_EQ(matches(p, "abc"), 1);
  Owned t;
  ASSERT_EQ(drx_trace(p, "ab", 2, &t.s), DRX_OK);
  EXPECT_FALSE(t.str().empty());
  drx_pattern_free(p);
}
