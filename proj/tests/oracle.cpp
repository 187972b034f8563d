#include "oracle.h"

#include <stdexcept>
#include <utility>

namespace oracle {

using drx::Kind;

namespace {

using Matrix = std::vector<std::vector<char>>;

// Whether s[i..j) is one atom of a class: for a plain class a single member,
// for an anchor-transparent one any run of anchors outside the class first.
bool class_spans(const drx::Node& n, const Word& s, std::size_t i, std::size_t j) {
  if (j <= i || j > s.size()) return false;
  if (!n.set.contains(s[j - 1])) return false;
  if (j == i + 1) return true;
  if (!n.transparent) return false;
  for (std::size_t k = i; k + 1 < j; ++k)
    if (!drx::is_anchor(s[k]) || n.set.contains(s[k])) return false;
  return true;
}

// m[i][j] says whether s[i..j) is in the language of r.
Matrix spans(const Regex& r, const Word& s) {
  const std::size_t n = s.size() + 1;
  Matrix m(n, std::vector<char>(n, 0));
  switch (r->kind) {
    case Kind::Empty: break;
    case Kind::Eps:
    case Kind::Tag:
      for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
      break;
    case Kind::Class:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m[i][j] = class_spans(*r, s, i, j);
      break;
    case Kind::Bank: return spans(r->kids[0], s);
    case Kind::Comp: {
      Matrix c = spans(r->kids[0], s);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m[i][j] = !c[i][j];
      break;
    }
    case Kind::Union:
    case Kind::Inter: {
      bool all = r->kind == Kind::Inter;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m[i][j] = all;
      for (const Regex& k : r->kids) {
        Matrix c = spans(k, s);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j) m[i][j] = all ? (m[i][j] && c[i][j]) : (m[i][j] || c[i][j]);
      }
      break;
    }
    case Kind::Concat: {
      Matrix a = spans(r->kids[0], s), b = spans(r->kids[1], s);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k)
          if (a[i][k])
            for (std::size_t j = k; j < n; ++j)
              if (b[k][j]) m[i][j] = 1;
      break;
    }
    case Kind::Star: {
      Matrix a = spans(r->kids[0], s);
      // Reachability from each start, one iteration at a time.
      for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1;
        for (std::size_t k = i; k < n; ++k)
          if (m[i][k])
            for (std::size_t j = k; j < n; ++j)
              if (a[k][j]) m[i][j] = 1;
      }
      break;
    }
  }
  return m;
}

using Item = std::pair<std::size_t, Bank>;

std::set<Item> go(const Regex& r, const Word& s, std::size_t i, const Bank& bank) {
  std::set<Item> out;
  switch (r->kind) {
    case Kind::Empty: break;
    case Kind::Eps: out.insert({i, bank}); break;
    case Kind::Tag: {
      Bank b = bank;
      b[static_cast<std::size_t>(r->tag)] = static_cast<Position>(i);
      out.insert({i, std::move(b)});
      break;
    }
    case Kind::Class:
      for (std::size_t j = i + 1; j <= s.size(); ++j)
        if (class_spans(*r, s, i, j)) out.insert({j, bank});
      break;
    case Kind::Bank: return go(r->kids[0], s, i, bank);
    case Kind::Union:
      for (const Regex& k : r->kids)
        for (const Item& it : go(k, s, i, bank)) out.insert(it);
      break;
    case Kind::Concat:
      for (const Item& a : go(r->kids[0], s, i, bank))
        for (const Item& b : go(r->kids[1], s, a.first, a.second)) out.insert(b);
      break;
    case Kind::Inter: {
      std::set<Item> cur = go(r->kids[0], s, i, bank);
      for (std::size_t k = 1; k < r->kids.size(); ++k) {
        std::set<Item> next;
        for (const Item& a : cur)
          for (const Item& b : go(r->kids[k], s, i, a.second))
            if (b.first == a.first) next.insert(b);
        cur = std::move(next);
      }
      return cur;
    }
    case Kind::Comp: {
      Matrix c = spans(r->kids[0], s);
      for (std::size_t j = i; j <= s.size(); ++j)
        if (!c[i][j]) out.insert({j, bank});
      break;
    }
    case Kind::Star: {
      // Any number of iterations, empty ones included, until nothing new
      // turns up; positions and slot values are bounded so this stops.
      std::vector<Item> work{{i, bank}};
      out.insert(work.front());
      while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        for (const Item& next : go(r->kids[0], s, it.first, it.second))
          if (out.insert(next).second) work.push_back(next);
      }
      break;
    }
  }
  return out;
}

}  // namespace

bool member_naive(const Regex& r, const Word& s) { return spans(r, s)[0][s.size()] != 0; }

LanguageSample enumerate_language(const Regex& r, const std::vector<Symbol>& alphabet, std::size_t max_len) {
  double total = 0, layer = 1;
  for (std::size_t l = 0; l <= max_len; ++l, layer *= static_cast<double>(alphabet.size())) total += layer;
  if (total > 1e6) throw std::length_error("language enumeration guard exceeded");
  LanguageSample out{alphabet, max_len, {}};
  std::vector<Word> layer_words{Word{}};
  for (std::size_t l = 0; l <= max_len; ++l) {
    std::vector<Word> next;
    for (const Word& w : layer_words) {
      if (member_naive(r, w)) out.members.insert(w);
      if (l == max_len) continue;
      for (Symbol a : alphabet) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    layer_words = std::move(next);
  }
  return out;
}

std::set<Bank> enumerate_matches(const Regex& r, int tag_count, const Word& s) {
  if (s.size() > 4 || tag_count > 6) throw std::length_error("match enumeration guard exceeded");
  std::set<Bank> out;
  Bank start(static_cast<std::size_t>(tag_count), drx::kUnset);
  for (const Item& it : go(r, s, 0, start))
    if (it.first == s.size()) out.insert(it.second);
  return out;
}

bool better(const Bank& a, const Bank& b, const drx::TagTable& tags) {
  for (int slot : tags.order) {
    Position x = a[static_cast<std::size_t>(slot)], y = b[static_cast<std::size_t>(slot)];
    if (x == y) continue;
    if (x == drx::kUnset) return false;
    if (y == drx::kUnset) return true;
    bool early = tags.entries[static_cast<std::size_t>(slot)].kind == drx::TagKind::Early;
    return early ? x < y : x > y;
  }
  return false;
}

Bank best(const std::set<Bank>& banks, const drx::TagTable& tags) {
  Bank top = *banks.begin();
  for (const Bank& b : banks)
    if (better(b, top, tags)) top = b;
  return top;
}

Word word(const char* ascii) {
  Word w;
  for (const char* p = ascii; *p; ++p) w.push_back(static_cast<unsigned char>(*p));
  return w;
}

}  // namespace oracle
