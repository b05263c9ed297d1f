/* Pattern-calculus laboratory: C interface to the reduction engines.
 *
 * Handles are opaque; every object returned by a *_new / parse / reduce call
 * must be released with the matching *_free. Strings returned as char* are
 * owned by the caller and released with ppcem_str_free. Terms are immutable
 * and independent of the context that created them.
 */
#ifndef PPCEM_H
#define PPCEM_H

#include <stdint.h>

#if defined(_WIN32)
#define PPCEM_API __declspec(dllexport)
#else
#define PPCEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ppcem_ctx ppcem_ctx;
typedef struct ppcem_term ppcem_term;
typedef struct ppcem_run ppcem_run;

typedef enum ppcem_status {
  PPCEM_OK = 0,
  PPCEM_ERR_PARSE = 1,
  PPCEM_ERR_INVALID = 2,
  PPCEM_ERR_BUDGET = 3,
  PPCEM_ERR_PROPERTY = 4
} ppcem_status;

/* Context: failure-term configuration plus the last error message. */
PPCEM_API ppcem_ctx* ppcem_ctx_new(void);
PPCEM_API void ppcem_ctx_free(ppcem_ctx* ctx);
PPCEM_API const char* ppcem_last_error(const ppcem_ctx* ctx);
/* Position of the last parse error; 0 when the last error was not one. */
PPCEM_API int ppcem_last_error_line(const ppcem_ctx* ctx);
PPCEM_API int ppcem_last_error_col(const ppcem_ctx* ctx);

/* Overrides the failure term. The source must denote a closed pure normal
 * term. */
PPCEM_API ppcem_status ppcem_set_bot(ppcem_ctx* ctx, const char* src);

PPCEM_API ppcem_term* ppcem_parse(ppcem_ctx* ctx, const char* src);
PPCEM_API void ppcem_term_free(ppcem_term* t);
PPCEM_API char* ppcem_print(const ppcem_term* t);
PPCEM_API void ppcem_str_free(char* s);

PPCEM_API int ppcem_is_pure(const ppcem_term* t);
PPCEM_API int ppcem_is_well_formed(const ppcem_term* t);
PPCEM_API int ppcem_alpha_equal(const ppcem_term* a, const ppcem_term* b);

/* engine: "ppc" | "em" | "partial".
 * strategy: "full" | "df-lr" | "df-reordered" | "matching-driven" for the
 * explicit engine; the other engines accept "full" (or NULL). */
PPCEM_API ppcem_run* ppcem_reduce(ppcem_ctx* ctx, const ppcem_term* t, const char* engine,
                                  const char* strategy, uint32_t max_steps);
PPCEM_API void ppcem_run_free(ppcem_run* r);

/* PPCEM_OK when a normal form was reached, PPCEM_ERR_BUDGET otherwise. */
PPCEM_API ppcem_status ppcem_run_status(const ppcem_run* r);
PPCEM_API ppcem_term* ppcem_run_final(const ppcem_run* r);
PPCEM_API uint32_t ppcem_run_steps(const ppcem_run* r);
/* Rule tag of step i (borrowed, valid while the run lives). */
PPCEM_API const char* ppcem_run_rule(const ppcem_run* r, uint32_t i);
/* Child-index path of step i: returns the length and writes up to cap
 * entries. */
PPCEM_API uint32_t ppcem_run_path(const ppcem_run* r, uint32_t i, uint32_t* out, uint32_t cap);
/* Printed term after step i. */
PPCEM_API char* ppcem_run_term(const ppcem_run* r, uint32_t i);
/* One line per blocked pending pair of the final term; empty when none. */
PPCEM_API char* ppcem_run_stuck_report(const ppcem_run* r);
/* The whole trace as a JSON array of {step, path, rule, term}. */
PPCEM_API char* ppcem_run_trace_json(const ppcem_run* r);

/* Runs the implicit and explicit engines side by side from a pure term and
 * writes an alignment report. PPCEM_ERR_PROPERTY flags a mismatch. */
PPCEM_API ppcem_status ppcem_compare(ppcem_ctx* ctx, const ppcem_term* t, uint32_t max_steps,
                                     char** report);

/* Property suites: "termination" | "confluence" | "simulation" | "semantics"
 * | "determinism" | "partial". PPCEM_ERR_PROPERTY when anything failed. */
PPCEM_API ppcem_status ppcem_check(ppcem_ctx* ctx, const char* suite, uint64_t seed, uint32_t count,
                                   uint64_t* passed, uint64_t* failed, uint64_t* inconclusive,
                                   char** report);

#ifdef __cplusplus
}
#endif

#endif /* PPCEM_H */
