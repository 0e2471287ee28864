#ifndef NILGOOD_H
#define NILGOOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values follow the command-line exit codes.
 */
typedef enum NilgoodStatus {
  NILGOOD_STATUS_OK = 0,
  /**
   * Null pointer or non-UTF-8 string argument.
   */
  NILGOOD_STATUS_NULL_OR_INVALID_ARGUMENT = 1,
  /**
   * Bad type, rank or partition.
   */
  NILGOOD_STATUS_INPUT_ERROR = 2,
  /**
   * Internal consistency failure, cache or I/O error.
   */
  NILGOOD_STATUS_STRUCTURAL_ERROR = 3,
  NILGOOD_STATUS_TIME_BUDGET_EXCEEDED = 4,
  /**
   * A panic was caught at the boundary.
   */
  NILGOOD_STATUS_PANIC = 5,
} NilgoodStatus;

/**
 * Verdict codes; equal to the command-line exit code of `check`.
 */
typedef enum NilgoodVerdict {
  NILGOOD_VERDICT_GOOD_CERTIFIED = 0,
  NILGOOD_VERDICT_LIKELY_NOT_GOOD = 10,
  NILGOOD_VERDICT_NOT_CERTIFIED_STANDARD = 11,
} NilgoodVerdict;

/**
 * Opaque report handle.
 */
typedef struct NilgoodReport NilgoodReport;

/**
 * Run settings; obtain defaults from `nilgood_default_options`.
 */
typedef struct NilgoodOptions {
  uint64_t seed;
  uint32_t trials;
  /**
   * Zero disables the generating-sequence search.
   */
  uint32_t search_budget;
  /**
   * Zero is unlimited.
   */
  uint64_t time_budget_secs;
} NilgoodOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default settings: seed 0, 8 trials, search budget 32, no time limit.
 */
struct NilgoodOptions nilgood_default_options(void);

/**
 * Checks the orbit of `partition` (e.g. "5,3,2,2") in the algebra of type
 * `type_letter` ('A'..'D') and `rank`. On success stores a new handle in
 * `*out`; on failure `*out` is set to null.
 *
 * # Safety
 * `partition` must be a NUL-terminated string, `options` null or valid,
 * and `out` a valid pointer.
 */
enum NilgoodStatus nilgood_check(char type_letter,
                                 uint32_t rank,
                                 const char *partition,
                                 const struct NilgoodOptions *options,
                                 struct NilgoodReport **out);

/**
 * Releases a report; null is ignored.
 *
 * # Safety
 * `report` must be null or a handle from `nilgood_check` not yet freed.
 */
void nilgood_report_free(struct NilgoodReport *report);

/**
 * Verdict of the report; `GoodCertified` is never returned for null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
enum NilgoodVerdict nilgood_report_verdict(const struct NilgoodReport *report);

/**
 * `dim g^e`, or 0 for null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint32_t nilgood_report_dim_ge(const struct NilgoodReport *report);

/**
 * `(dim g^e + rank)/2`, or 0 for null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint32_t nilgood_report_bound(const struct NilgoodReport *report);

/**
 * Sum of the reported initial degrees, or 0 for null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint32_t nilgood_report_degree_sum(const struct NilgoodReport *report);

/**
 * Copies up to `len` initial degrees into `buf` and returns the rank, so
 * a call with `len = 0` sizes the buffer.
 *
 * # Safety
 * `report` must be null or a live handle; `buf` must hold `len` values.
 */
size_t nilgood_report_degrees(const struct NilgoodReport *report, uint32_t *buf, size_t len);

/**
 * Report as JSON, identical to `check --output json`; null on failure.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *nilgood_report_to_json(const struct NilgoodReport *report);

/**
 * Stores a JSON array of the orbit labels of the algebra in `*out`, in
 * enumeration order.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NilgoodStatus nilgood_orbit_list(char type_letter, uint32_t rank, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void nilgood_string_free(char *s);

/**
 * Message of the last failure on this thread, empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *nilgood_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *nilgood_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILGOOD_H */
