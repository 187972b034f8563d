#pragma once

// Small helpers shared by the unit tests.

#include <string>
#include <vector>

#include <algorithm>
#include <utility>

#include "oracle.h"
#include "submatch.h"
#include "syntax.h"

namespace support {

inline drx::Regex re(const std::string& pattern, const drx::ParseOptions& opt = {}) {
  return drx::parse(pattern, opt).regex;
}

inline std::vector<drx::Symbol> sym(const std::string& ascii) { return oracle::word(ascii.c_str()); }

// Every word over letters of length at most max_len, shortest first.
inline std::vector<oracle::Word> words(const std::string& letters, std::size_t max_len) {
  std::vector<oracle::Word> out{oracle::Word{}};
  std::size_t from = 0;
  for (std::size_t l = 1; l <= max_len; ++l) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (char c : letters) {
        oracle::Word w = out[i];
        w.push_back(static_cast<unsigned char>(c));
        out.push_back(std::move(w));
      }
    from = to;
  }
  return out;
}

inline std::string text(const oracle::Word& w) {
  std::string s;
  for (drx::Symbol c : w) s.push_back(static_cast<char>(c));
  return s;
}

// What a sum of terms amounts to once disambiguated at position p from
// fresh memory: each surviving body with the slots its bank ends up with,
// in a fixed order. Term order and bank names drop out.
inline std::vector<std::pair<std::string, std::vector<drx::Position>>> settled(const drx::Regex& r,
                                                                                 const drx::TagTable& tags,
                                                                                 drx::Position p) {
  int slots = tags.size();
  drx::Store fresh(2, std::vector<drx::Position>(static_cast<std::size_t>(slots), drx::kUnset));
  drx::Disambiguated d = drx::disambiguate(r, tags, fresh, p);
  int banks = drx::max_bank(d.regex) + 1;
  drx::Store st(static_cast<std::size_t>(std::max(banks, 2)), std::vector<drx::Position>(static_cast<std::size_t>(slots), drx::kUnset));
  drx::execute(d.ops, st, p, slots);
  std::vector<std::pair<std::string, std::vector<drx::Position>>> out;
  for (const drx::Regex& t : drx::terms_of(d.regex))
    out.push_back({drx::to_string(t->kids[0]), st[static_cast<std::size_t>(t->bank)]});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace support
