#pragma once

#include <string>
#include <vector>

#include "anchors.h"
#include "submatch.h"

namespace drx {

struct MatchOptions {
  TevalMode teval = TevalMode::Distribute;
  bool anchors = true;
  bool stream_offsets = false;  // report stream positions instead of text offsets
  WordPredicate word = is_word_symbol;
};

// Recognition by repeated derivatives; tags and banks are ignored.
bool match_lazy(const Regex& r, const std::vector<Symbol>& s);
bool match_lazy(const Regex& r, const std::string& text);

// Recognition with submatches on a prepared body (see prepare).
MatchResult match_full(const Regex& body, const TagTable& tags, const std::string& text, const MatchOptions& opt = {});
MatchResult match_stream(const Regex& body, const TagTable& tags, const AnchoredStream& stream,
                         const MatchOptions& opt = {});

struct TraceStep {
  std::string consumed;    // empty for the initial line
  std::string expression;
  std::string ops;
};

std::vector<TraceStep> trace_lazy(const Regex& r, const std::vector<Symbol>& s);
std::vector<TraceStep> trace_full(const Regex& body, const TagTable& tags, const AnchoredStream& stream,
                                  TevalMode mode = TevalMode::Distribute);

}  // namespace drx
