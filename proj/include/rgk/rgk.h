#ifndef RGK_RGK_H
#define RGK_RGK_H

/*
 * C interface to the rely-guarantee kernel.
 *
 * Handles are opaque and owned by the caller: every *_create or result
 * out-parameter must be released with the matching *_destroy or
 * rgk_string_free. Functions return an rgk_status; on failure
 * rgk_last_error() describes the problem for the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RGK_API __declspec(dllexport)
#else
#define RGK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rgk_session rgk_session;
typedef struct rgk_report rgk_report;

typedef enum rgk_status {
  RGK_OK = 0,
  RGK_ERR_NULL_ARGUMENT = 1,
  RGK_ERR_INVALID_ARGUMENT = 2,
  RGK_ERR_PARSE = 3,
  RGK_ERR_STATE_LIMIT = 4,
  RGK_ERR_TOO_LARGE = 5,
  RGK_ERR_OUT_OF_RANGE = 6,
  RGK_ERR_INTERNAL = 7
} rgk_status;

typedef enum rgk_verdict {
  RGK_PASS = 0,
  RGK_FAIL = 1,
  RGK_BOUND_INSUFFICIENT = 2,
  RGK_SKIPPED = 3
} rgk_verdict;

RGK_API const char* rgk_status_string(rgk_status status);
RGK_API const char* rgk_verdict_string(rgk_verdict verdict);
/* Message for the most recent failure on this thread; "" if none. */
RGK_API const char* rgk_last_error(void);
RGK_API const char* rgk_version(void);

/*
 * A session fixes the state space (comma-separated variable names over the
 * values 0..domain-1), the trace length bound and the sweep seed.
 * state_ceiling 0 selects the default of 4096 states; larger spaces are
 * refused with RGK_ERR_STATE_LIMIT.
 */
RGK_API rgk_status rgk_session_create(const char* variables, uint32_t domain, size_t bound, uint64_t seed,
                                      size_t state_ceiling, rgk_session** out);
RGK_API void rgk_session_destroy(rgk_session* session);
RGK_API size_t rgk_session_state_count(const rgk_session* session);
/* Instances per sweep; 0 keeps each sweep's default. */
RGK_API rgk_status rgk_session_set_instances(rgk_session* session, size_t instances);
/* Leaves of an outline are checked concurrently unless disabled. */
RGK_API rgk_status rgk_session_set_parallel(rgk_session* session, int enabled);

/* Language-algebra sweeps over alphabets of at most state_count states. */
RGK_API rgk_status rgk_run_laws(rgk_session* session, rgk_report** out);
/* Rely-guarantee, program and rule sweeps. */
RGK_API rgk_status rgk_run_axioms(rgk_session* session, rgk_report** out);

/*
 * Checks "rely R guar G pre C post C" against a program. With an outline
 * (JSON, may be NULL) the outline's root must carry the same quintuple.
 */
RGK_API rgk_status rgk_verify(rgk_session* session, const char* spec, const char* program, const char* outline,
                              rgk_report** out);

/*
 * The parallel least-index search over `array` with element predicate
 * `predicate` on the variable v. The session supplies only the bound;
 * the state space is derived from the array length.
 */
RGK_API rgk_status rgk_findp(rgk_session* session, const int64_t* array, size_t length, const char* predicate,
                             rgk_report** out);

/* Denotation of a program at the session bound, one word per line. */
RGK_API rgk_status rgk_dump(rgk_session* session, const char* program, char** out);

RGK_API void rgk_string_free(char* text);

RGK_API void rgk_report_destroy(rgk_report* report);
RGK_API size_t rgk_report_count(const rgk_report* report);
RGK_API rgk_verdict rgk_report_overall(const rgk_report* report);
/* Borrowed strings, valid until the report is destroyed. */
RGK_API rgk_status rgk_report_check(const rgk_report* report, size_t index, const char** name, rgk_verdict* verdict,
                                    const char** detail);
/* Number of letters in a check's witness; 0 when there is none. */
RGK_API size_t rgk_report_witness_length(const rgk_report* report, size_t index);
RGK_API rgk_status rgk_report_witness_letter(const rgk_report* report, size_t index, size_t position, uint32_t* pre,
                                             uint32_t* post);
/* "x=2,y=0" for a state id of the space the report was produced over. */
RGK_API rgk_status rgk_report_describe_state(const rgk_report* report, uint32_t state, char** out);
/* Human-readable listing, one line per check. */
RGK_API rgk_status rgk_report_text(const rgk_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RGK_RGK_H */
