/*
 * urnflow - exact ball-draw probabilities for multi-urn transfer schemes.
 *
 * C interface over the computation core. All fallible calls return an
 * URNFLOW_* status; on failure urnflow_last_error() carries a message for
 * the calling thread. Handles are opaque and owned by the caller via the
 * matching *_free function. Strings returned through report accessors stay
 * valid until their report is freed.
 */
#ifndef URNFLOW_H
#define URNFLOW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define URNFLOW_API __declspec(dllexport)
#else
#define URNFLOW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  URNFLOW_OK = 0,
  URNFLOW_ERR_ARGUMENT = 1,    /* null pointer or invalid argument */
  URNFLOW_ERR_PARSE = 2,       /* file unreadable, malformed, or invalid */
  URNFLOW_ERR_INFEASIBLE = 3,  /* a step moves more balls than available,
                                  or a query draws from an empty urn */
  URNFLOW_ERR_UNSUPPORTED = 4, /* operation needs integer urn compositions */
  URNFLOW_ERR_CAP = 5,         /* enumeration outcome cap exceeded */
  URNFLOW_ERR_MISMATCH = 6,    /* verification found a mismatch */
  URNFLOW_ERR_INTERNAL = 7
};

typedef struct urnflow_scheme urnflow_scheme;
typedef struct urnflow_report urnflow_report;

URNFLOW_API const char* urnflow_version(void);

/* Message for the most recent failure on this thread; "" if none yet. */
URNFLOW_API const char* urnflow_last_error(void);

URNFLOW_API int urnflow_scheme_load_file(const char* path, urnflow_scheme** out);
URNFLOW_API int urnflow_scheme_load_json(const char* json_text, urnflow_scheme** out);
URNFLOW_API void urnflow_scheme_free(urnflow_scheme* scheme);

/* Canonical JSON for the scheme; release with urnflow_string_free. */
URNFLOW_API int urnflow_scheme_to_json(const urnflow_scheme* scheme, char** out_json);
URNFLOW_API void urnflow_string_free(char* text);

/* Closed-form answers; `digits` significant digits in decimal columns. */
URNFLOW_API int urnflow_compute(const urnflow_scheme* scheme, uint32_t digits,
                                urnflow_report** out);

/* Engine vs exhaustive enumeration. Returns URNFLOW_ERR_MISMATCH (with the
 * report still filled in) when any query disagrees. */
URNFLOW_API int urnflow_verify(const urnflow_scheme* scheme, uint64_t outcome_cap,
                               urnflow_report** out);

/* Seed-deterministic Monte Carlo cross-check. */
URNFLOW_API int urnflow_simulate(const urnflow_scheme* scheme, uint64_t trials,
                                 uint64_t seed, uint32_t digits,
                                 urnflow_report** out);

/* Timing of closed form vs enumeration; `sweep` holds the k values to
 * substitute into the scheme's first step. */
URNFLOW_API int urnflow_bench(const urnflow_scheme* scheme, const uint64_t* sweep,
                              size_t sweep_len, uint64_t outcome_cap,
                              urnflow_report** out);

/* Reports are small string tables: named columns, one row per result. */
URNFLOW_API size_t urnflow_report_rows(const urnflow_report* report);
URNFLOW_API size_t urnflow_report_columns(const urnflow_report* report);
URNFLOW_API const char* urnflow_report_column_name(const urnflow_report* report,
                                                   size_t column);
URNFLOW_API const char* urnflow_report_cell(const urnflow_report* report, size_t row,
                                            size_t column);
URNFLOW_API const char* urnflow_report_get(const urnflow_report* report, size_t row,
                                           const char* column_name);
URNFLOW_API void urnflow_report_free(urnflow_report* report);

#ifdef __cplusplus
}
#endif

#endif /* URNFLOW_H */
