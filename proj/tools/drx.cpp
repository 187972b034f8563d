// Command-line front end over the C API.
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "drx/drx.h"

namespace {

constexpr int kMatch = 0, kNoMatch = 1, kError = 2;

struct Config {
  std::string pattern;
  std::optional<std::string> input;
  std::string file;
  std::string policy = "posix";
  std::string engine = "lazy";
  std::string format;
  std::string mode;
  std::size_t state_bound = 0;
  bool show_trace = false;
  bool no_anchors = false;
  bool anchors = false;
  bool stream_offsets = false;
  bool ascii = false;
  bool subpatterns = false;
  bool collapse = false;
  bool tagged = false;
};

int fail(const std::string& what) {
  std::cerr << "drx: " << what << "\n";
  return kError;
}

int fail(drx_status s) {
  std::string msg = drx_last_error();
  return fail(msg.empty() ? drx_status_name(s) : msg);
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// The text to match: the argument, else the file, else stdin. One trailing
// newline is dropped from file and stdin input.
bool load_input(const Config& c, std::string& out) {
  if (c.input) {
    out = *c.input;
    return true;
  }
  if (!c.file.empty()) {
    std::ifstream f(c.file, std::ios::binary);
    if (!f) return false;
    out = read_all(f);
  } else {
    out = read_all(std::cin);
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return true;
}

drx_status compile(const Config& c, const char* default_mode, bool default_anchors, drx_pattern** out) {
  drx_options o;
  drx_options_init(&o);
  o.policy = c.policy == "preorder" ? DRX_POLICY_PREORDER : c.policy == "postorder" ? DRX_POLICY_POSTORDER : DRX_POLICY_POSIX;
  std::string mode = c.mode.empty() ? default_mode : c.mode;
  o.mode = mode == "prefix" ? DRX_MODE_PREFIX : mode == "search" ? DRX_MODE_SEARCH : mode == "raw" ? DRX_MODE_RAW : DRX_MODE_WHOLE;
  o.anchors = c.no_anchors ? 0 : (c.anchors || default_anchors) ? 1 : 0;
  o.stream_offsets = c.stream_offsets;
  o.ascii = c.ascii;
  o.subpattern_tags = c.subpatterns;
  o.collapse_teval = c.collapse;
  o.state_bound = c.state_bound;
  return drx_compile(c.pattern.data(), c.pattern.size(), &o, out);
}

void print_trace(const drx_pattern* p, const std::string& text) {
  char* t = nullptr;
  if (drx_trace(p, text.data(), text.size(), &t) == DRX_OK) std::cerr << t;
  drx_string_free(t);
}

struct PatternHandle {
  drx_pattern* p = nullptr;
  ~PatternHandle() { drx_pattern_free(p); }
};
struct DfaHandle {
  drx_dfa* d = nullptr;
  ~DfaHandle() { drx_dfa_free(d); }
};

int run_match(const Config& c) {
  std::string text;
  if (!load_input(c, text)) return fail("cannot read " + c.file);
  PatternHandle ph;
  if (drx_status s = compile(c, "whole", true, &ph.p)) return fail(s);
  if (c.show_trace) print_trace(ph.p, text);
  int matched = 0;
  if (c.engine == "dfa") {
    DfaHandle dh;
    if (drx_status s = drx_dfa_build(ph.p, 0, &dh.d)) return fail(s);
    if (drx_status s = drx_dfa_match(dh.d, text.data(), text.size(), &matched)) return fail(s);
  } else if (drx_status s = drx_match(ph.p, text.data(), text.size(), &matched)) {
    return fail(s);
  }
  if (c.format == "json")
    std::cout << "{\"matched\":" << (matched ? "true" : "false") << "}\n";
  else
    std::cout << (matched ? "match" : "no match") << "\n";
  return matched ? kMatch : kNoMatch;
}

int run_submatch(const Config& c) {
  std::string text;
  if (!load_input(c, text)) return fail("cannot read " + c.file);
  PatternHandle ph;
  if (drx_status s = compile(c, "whole", true, &ph.p)) return fail(s);
  if (c.show_trace) print_trace(ph.p, text);
  int groups = drx_pattern_groups(ph.p) + 1;
  std::vector<drx_span> spans(static_cast<std::size_t>(groups));
  int matched = 0;
  char* json = nullptr;
  drx_status s;
  DfaHandle dh;
  if (c.engine == "dfa") {
    if ((s = drx_dfa_build(ph.p, 1, &dh.d))) return fail(s);
    s = drx_dfa_submatch(dh.d, text.data(), text.size(), &matched, spans.data(), spans.size());
    if (!s && c.format != "text") s = drx_dfa_submatch_json(dh.d, text.data(), text.size(), &json);
  } else {
    s = drx_submatch(ph.p, text.data(), text.size(), &matched, spans.data(), spans.size());
    if (!s && c.format != "text") s = drx_submatch_json(ph.p, text.data(), text.size(), &json);
  }
  if (s) return fail(s);
  if (json) {
    std::cout << json << "\n";
    drx_string_free(json);
  } else if (!matched) {
    std::cout << "no match\n";
  } else {
    for (int g = 0; g < groups; ++g) {
      const drx_span& sp = spans[static_cast<std::size_t>(g)];
      std::cout << g << ": ";
      if (sp.start < 0) {
        std::cout << "unmatched\n";
        continue;
      }
      std::cout << "[" << sp.start << ", " << sp.end << ")";
      if (!c.stream_offsets)
        std::cout << " \"" << text.substr(static_cast<std::size_t>(sp.start), static_cast<std::size_t>(sp.end - sp.start))
                  << "\"";
      std::cout << "\n";
    }
  }
  return matched ? kMatch : kNoMatch;
}

int run_compile(const Config& c) {
  PatternHandle ph;
  if (drx_status s = compile(c, "raw", false, &ph.p)) return fail(s);
  DfaHandle dh;
  bool tagged = c.tagged || drx_pattern_groups(ph.p) > 0;
  if (drx_status s = drx_dfa_build(ph.p, tagged, &dh.d)) return fail(s);
  char* out = nullptr;
  if (drx_status s = drx_dfa_export(dh.d, c.format.empty() ? "dot" : c.format.c_str(), &out)) return fail(s);
  std::cout << out;
  if (c.format == "json") std::cout << "\n";
  drx_string_free(out);
  return kMatch;
}

int run_trace(const Config& c) {
  std::string text;
  if (!load_input(c, text)) return fail("cannot read " + c.file);
  PatternHandle ph;
  if (drx_status s = compile(c, "raw", false, &ph.p)) return fail(s);
  char* out = nullptr;
  if (drx_status s = drx_trace(ph.p, text.data(), text.size(), &out)) return fail(s);
  std::string t = out;
  drx_string_free(out);
  std::cout << t;
  bool rejected = t.size() >= 9 && t.compare(t.size() - 9, 9, "no match\n") == 0;
  return rejected ? kNoMatch : kMatch;
}

int run_grep(const Config& c) {
  PatternHandle ph;
  if (drx_status s = compile(c, "search", true, &ph.p)) return fail(s);
  DfaHandle dh;
  bool use_dfa = c.engine != "lazy";
  if (use_dfa)
    if (drx_status s = drx_dfa_build(ph.p, 0, &dh.d)) return fail(s);
  std::ifstream file;
  if (!c.file.empty()) {
    file.open(c.file, std::ios::binary);
    if (!file) return fail("cannot read " + c.file);
  }
  std::istream& in = c.file.empty() ? std::cin : file;
  bool any = false;
  std::string line;
  while (std::getline(in, line)) {
    int matched = 0;
    drx_status s = use_dfa ? drx_dfa_match(dh.d, line.data(), line.size(), &matched)
                           : drx_match(ph.p, line.data(), line.size(), &matched);
    if (s) return fail(s);
    if (matched) {
      std::cout << line << "\n";
      any = true;
    }
  }
  return any ? kMatch : kNoMatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drx: regular expressions by derivatives"};
  app.require_subcommand(1, 1);
  Config c;

  auto common = [&](CLI::App* sub, bool takes_input) {
    sub->add_option("pattern", c.pattern, "Pattern")->required();
    if (takes_input) {
      sub->add_option("input", c.input, "Text to match (default: --file, then stdin)");
      sub->add_option("--file", c.file, "Read the text from a file");
    }
    sub->add_option("--policy", c.policy, "Disambiguation policy")
        ->check(CLI::IsMember({"posix", "preorder", "postorder"}));
    sub->add_option("--mode", c.mode, "whole, prefix, search or raw")
        ->check(CLI::IsMember({"whole", "prefix", "search", "raw"}));
    sub->add_option("--state-bound", c.state_bound, "DFA state limit");
    sub->add_flag("--no-anchors", c.no_anchors, "Do not make anchors explicit in the input");
    sub->add_flag("--stream-offsets", c.stream_offsets, "Report anchored-stream positions");
    sub->add_flag("--ascii", c.ascii, "'.' and negated classes range over ASCII");
    sub->add_flag("--subpatterns", c.subpatterns, "Tag every starred subexpression");
    sub->add_flag("--collapse", c.collapse, "Fold the empty paths of tag evaluation into one");
  };

  auto* match = app.add_subcommand("match", "Report whether the text matches");
  common(match, true);
  match->add_option("--engine", c.engine, "lazy or dfa")->check(CLI::IsMember({"lazy", "dfa"}));
  match->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  match->add_flag("--show-trace", c.show_trace, "Print the derivative chain to stderr");

  auto* submatch = app.add_subcommand("submatch", "Print the submatch spans as JSON");
  common(submatch, true);
  submatch->add_option("--engine", c.engine, "lazy or dfa")->check(CLI::IsMember({"lazy", "dfa"}));
  submatch->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"text", "json"}));
  submatch->add_flag("--show-trace", c.show_trace, "Print the derivative chain to stderr");

  auto* comp = app.add_subcommand("compile", "Build a DFA and export it");
  common(comp, false);
  comp->add_option("--format", c.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  comp->add_flag("--anchors", c.anchors, "Include anchors in the alphabet");
  comp->add_flag("--tagged", c.tagged, "Build a tagged DFA even without groups");

  auto* trace = app.add_subcommand("trace", "Print the derivative chain");
  common(trace, true);
  trace->add_flag("--anchors", c.anchors, "Make anchors explicit in the input");

  auto* grep = app.add_subcommand("grep", "Print the lines containing a match");
  grep->add_option("pattern", c.pattern, "Pattern")->required();
  grep->add_option("--file", c.file, "Read lines from a file instead of stdin");
  grep->add_option("--engine", c.engine, "lazy or dfa")->check(CLI::IsMember({"lazy", "dfa"}));
  grep->add_option("--state-bound", c.state_bound, "DFA state limit");
  grep->add_flag("--ascii", c.ascii, "'.' and negated classes range over ASCII");
  c.engine.clear();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }
  if (c.engine.empty()) c.engine = grep->parsed() ? "dfa" : "lazy";
  if (match->parsed()) return run_match(c);
  if (submatch->parsed()) return run_submatch(c);
  if (comp->parsed()) return run_compile(c);
  if (trace->parsed()) return run_trace(c);
  return run_grep(c);
}
