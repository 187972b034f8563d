/* drx: derivative-based regular expressions with submatches.
 *
 * All functions return a drx_status; on failure drx_last_error() holds a
 * message for the calling thread. Strings returned through char** are
 * owned by the caller and released with drx_string_free.
 */
#ifndef DRX_DRX_H
#define DRX_DRX_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define DRX_API __attribute__((visibility("default")))
#else
#define DRX_API
#endif

typedef enum drx_status {
  DRX_OK = 0,
  DRX_ERR_SYNTAX = 1,
  DRX_ERR_STATE_BOUND = 2,
  DRX_ERR_ARGUMENT = 3,
  DRX_ERR_ALPHABET = 4,
  DRX_ERR_INTERNAL = 5
} drx_status;

typedef enum drx_policy { DRX_POLICY_POSIX = 0, DRX_POLICY_PREORDER = 1, DRX_POLICY_POSTORDER = 2 } drx_policy;

/* WHOLE matches the entire text, PREFIX a prefix, SEARCH any substring
 * (leftmost, then longest). RAW uses the pattern as written with no
 * whole-match group; group 0 then spans the text. */
typedef enum drx_mode { DRX_MODE_WHOLE = 0, DRX_MODE_PREFIX = 1, DRX_MODE_SEARCH = 2, DRX_MODE_RAW = 3 } drx_mode;

typedef struct drx_options {
  drx_policy policy;
  drx_mode mode;
  int subpattern_tags; /* give every starred subexpression its own tags */
  int ascii;           /* '.' and [^...] range over 0-127 */
  int anchors;         /* make anchors explicit in the input */
  int stream_offsets;  /* report anchored-stream positions, not byte offsets */
  int collapse_teval;  /* fold all empty paths into one write list */
  size_t state_bound;  /* DFA construction limit, 0 for the default */
} drx_options;

typedef struct drx_span {
  long long start; /* -1 when the group did not participate */
  long long end;
} drx_span;

typedef struct drx_pattern drx_pattern;
typedef struct drx_dfa drx_dfa;

DRX_API void drx_options_init(drx_options* opt);
DRX_API const char* drx_last_error(void);
/* Byte offset of the last syntax error, or -1. */
DRX_API long long drx_last_error_offset(void);
DRX_API const char* drx_status_name(drx_status s);
DRX_API void drx_string_free(char* s);

DRX_API drx_status drx_compile(const char* pattern, size_t len, const drx_options* opt, drx_pattern** out);
DRX_API void drx_pattern_free(drx_pattern* p);
/* Number of capture groups, not counting group 0. */
DRX_API int drx_pattern_groups(const drx_pattern* p);
/* Canonical form of the parsed pattern. */
DRX_API drx_status drx_pattern_text(const drx_pattern* p, char** out);

/* Recognition by derivatives, no submatches. */
DRX_API drx_status drx_match(const drx_pattern* p, const char* text, size_t len, int* matched);
/* groups receives up to cap spans, group 0 first. */
DRX_API drx_status drx_submatch(const drx_pattern* p, const char* text, size_t len, int* matched, drx_span* groups,
                                size_t cap);
DRX_API drx_status drx_submatch_json(const drx_pattern* p, const char* text, size_t len, char** json);
/* One line per consumed symbol: the symbol, the expression reached, and
 * the memory operations performed. */
DRX_API drx_status drx_trace(const drx_pattern* p, const char* text, size_t len, char** out);

/* tagged = 0 builds a plain DFA (submatch calls then fail with
 * DRX_ERR_ARGUMENT). */
DRX_API drx_status drx_dfa_build(const drx_pattern* p, int tagged, drx_dfa** out);
DRX_API void drx_dfa_free(drx_dfa* d);
DRX_API size_t drx_dfa_states(const drx_dfa* d);
DRX_API drx_status drx_dfa_match(const drx_dfa* d, const char* text, size_t len, int* matched);
DRX_API drx_status drx_dfa_submatch(const drx_dfa* d, const char* text, size_t len, int* matched, drx_span* groups,
                                    size_t cap);
DRX_API drx_status drx_dfa_submatch_json(const drx_dfa* d, const char* text, size_t len, char** json);
/* format is "dot" or "json". */
DRX_API drx_status drx_dfa_export(const drx_dfa* d, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif
