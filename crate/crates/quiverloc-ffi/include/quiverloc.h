#ifndef QUIVERLOC_H
#define QUIVERLOC_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Scalar field; `Default` keeps the identity's own choice.
 */
typedef enum QlMode {
  QL_MODE_DEFAULT = 0,
  QL_MODE_EXACT = 1,
  QL_MODE_PRIME = 2,
} QlMode;

typedef enum QlStatus {
  QL_STATUS_OK = 0,
  QL_STATUS_NULL_ARGUMENT = 1,
  QL_STATUS_INVALID_UTF8 = 2,
  QL_STATUS_INVALID_ARGUMENT = 3,
  QL_STATUS_DIVISION_BY_ZERO = 4,
  QL_STATUS_SHAPE_MISMATCH = 5,
  QL_STATUS_NOT_INVERTIBLE = 6,
  QL_STATUS_NON_TERMINATING = 7,
  QL_STATUS_POLE_COLLISION = 8,
  QL_STATUS_RETRY_EXHAUSTED = 9,
  QL_STATUS_DIVERGES = 10,
  QL_STATUS_INFEASIBLE = 11,
  QL_STATUS_PANIC = 12,
} QlStatus;

/**
 * Opaque verdict of one identity check.
 */
typedef struct QlReport QlReport;

/**
 * Opaque truncated power series.
 */
typedef struct QlSeries QlSeries;

/**
 * Parameters for verify and compute. Zero or null fields mean "use the default".
 */
typedef struct QlRequest {
  size_t n;
  const size_t *r;
  size_t r_len;
  size_t order;
  enum QlMode mode;
  const uint64_t *seeds;
  size_t seeds_len;
  size_t trials;
} QlRequest;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *ql_version(void);

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer is valid until the next call on this thread.
 */
const char *ql_last_error(void);

/**
 * Check one identity. `req` may be null. `cap` bounds the estimated fixed-point count (0 = default).
 *
 * # Safety
 * `identity` must be a NUL-terminated string, `req` null or valid, `out` writable.
 */
enum QlStatus ql_verify(const char *identity,
                        const struct QlRequest *req,
                        uint64_t cap,
                        struct QlReport **out);

/**
 * 1 if the report passed, 0 if not, -1 for a null handle.
 *
 * # Safety
 * `rep` must be null or a live handle from [`ql_verify`].
 */
int32_t ql_report_passed(const struct QlReport *rep);

/**
 * Report as one JSON object; free with [`ql_string_free`]. Null for a null handle.
 *
 * # Safety
 * `rep` must be null or a live handle from [`ql_verify`].
 */
char *ql_report_json(const struct QlReport *rep);

/**
 * # Safety
 * `rep` must be null or a handle from [`ql_verify`] not yet freed.
 */
void ql_report_free(struct QlReport *rep);

/**
 * Compute a named series. `stability` is negative for the minus chamber and positive otherwise.
 *
 * # Safety
 * `series` must be a NUL-terminated string, `req` null or valid, `out` writable.
 */
enum QlStatus ql_compute(const char *series,
                         const struct QlRequest *req,
                         int32_t stability,
                         uint64_t seed,
                         struct QlSeries **out);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live series handle.
 */
size_t ql_series_nvars(const struct QlSeries *s);

/**
 * Total-degree truncation, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live series handle.
 */
size_t ql_series_trunc(const struct QlSeries *s);

/**
 * Coefficient of the monomial with exponents `exps[0..len]`, written as a string to `out`.
 *
 * # Safety
 * `s` live, `exps` valid for `len` reads, `out` writable.
 */
enum QlStatus ql_series_coeff(const struct QlSeries *s,
                              const uint32_t *exps,
                              size_t len,
                              char **out);

/**
 * Series as JSON; free with [`ql_string_free`].
 *
 * # Safety
 * `s` must be null or a live series handle.
 */
char *ql_series_json(const struct QlSeries *s);

/**
 * Series as CSV; free with [`ql_string_free`].
 *
 * # Safety
 * `s` must be null or a live series handle.
 */
char *ql_series_csv(const struct QlSeries *s);

/**
 * # Safety
 * `s` must be null or a series handle not yet freed.
 */
void ql_series_free(struct QlSeries *s);

/**
 * # Safety
 * `p` must be null or a string returned by this library, not yet freed.
 */
void ql_string_free(char *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVERLOC_H */
