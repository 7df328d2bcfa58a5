/* C interface to the bvk verification library.
 *
 * A session owns a parsed model spec. Every call returns a bvk_status; on
 * anything but BVK_OK, bvk_last_error() describes the problem (spec errors
 * start with "line:col: "). Strings handed out through char** parameters are
 * owned by the caller and released with bvk_string_free.
 */
#ifndef BVK_BVK_H
#define BVK_BVK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BVK_API __declspec(dllexport)
#else
#define BVK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bvk_status {
  BVK_OK = 0,
  BVK_ERR_SPEC = 1,     /* malformed spec text */
  BVK_ERR_DOMAIN = 2,   /* input outside an operation's domain */
  BVK_ERR_IO = 3,       /* unreadable or unwritable file */
  BVK_ERR_ARG = 4,      /* null pointer or invalid option */
  BVK_ERR_INTERNAL = 5  /* unexpected failure */
} bvk_status;

typedef enum bvk_format { BVK_FORMAT_HUMAN = 0, BVK_FORMAT_JSON = 1 } bvk_format;

typedef struct bvk_session bvk_session;

/* Zero-initialize, then set what you need. A negative budget or seed means
 * "not set": the spec's suite block or the library default applies. */
typedef struct bvk_options {
  int64_t budget_degree;
  int64_t budget_tuples;
  int64_t seed;
  /* Comma-separated suite labels or kinds; NULL or "" runs every block. */
  const char* suites;
  bvk_format format;
} bvk_options;

/* Options with every budget field unset and human output. */
BVK_API bvk_options bvk_default_options(void);

BVK_API bvk_status bvk_session_from_text(const char* text, bvk_session** out);
BVK_API bvk_status bvk_session_from_file(const char* path, bvk_session** out);
BVK_API void bvk_session_free(bvk_session* session);

/* Message of the last failing call on this thread; "" if none. */
BVK_API const char* bvk_last_error(void);

/* Runs the selected suites. *exit_status receives 0 (all pass), 1 (a check
 * failed) or 3 (untested entries, no failure). */
BVK_API bvk_status bvk_run(bvk_session* session, const bvk_options* options, char** report,
                           int* exit_status);

/* Akman and Koszul brackets F^k of operator `op` on k element arguments
 * written in the generator names of the spec, e.g. "x1*xi2 - 1/2". */
BVK_API bvk_status bvk_brackets(bvk_session* session, const char* op, const char* const* args,
                                size_t nargs, const bvk_options* options, char** out);

/* Degree/order split table of a square-zero operator. */
BVK_API bvk_status bvk_split(bvk_session* session, const char* op, const bvk_options* options,
                             char** out);

/* Dimensions of H(A, d) on weight slices min_weight..max_weight. */
BVK_API bvk_status bvk_cohomology(bvk_session* session, const char* differential, int min_weight,
                                  int max_weight, const bvk_options* options, char** out);

/* The sign conventions used throughout, as text. */
BVK_API bvk_status bvk_explain(char** out);

BVK_API void bvk_string_free(char* s);

/* Report format tag, "bvk-report/1". */
BVK_API const char* bvk_report_format(void);

#ifdef __cplusplus
}
#endif

#endif /* BVK_BVK_H */
