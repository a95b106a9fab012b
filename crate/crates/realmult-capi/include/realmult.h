#ifndef REALMULT_H
#define REALMULT_H

/* This file is generated by cbindgen from realmult-capi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum {
  /**
   * Success; out-parameters are valid.
   */
  RM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  RM_STATUS_NULL_POINTER = 1,
  /**
   * The coefficients do not define a real quadratic irrational.
   */
  RM_STATUS_NOT_IRRATIONAL = 2,
  /**
   * A matrix argument is not in GL(2,Z).
   */
  RM_STATUS_NOT_UNIMODULAR = 3,
  /**
   * The integer is not a valid discriminant.
   */
  RM_STATUS_INVALID_DISCRIMINANT = 4,
  /**
   * The trivial unit (power 0) was requested where it is excluded.
   */
  RM_STATUS_TRIVIAL_UNIT = 5,
  /**
   * Discriminants of the arguments do not match.
   */
  RM_STATUS_MISMATCHED_ORDERS = 6,
  /**
   * Any other invalid input.
   */
  RM_STATUS_INVALID_INPUT = 7,
} RmStatus;

/**
 * Opaque quadratic irrational theta with k theta^2 + l theta + m = 0.
 */
typedef struct RmTheta RmTheta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through a `char**`
 * out-parameter of this library, not yet freed; null is ignored.
 */
void rm_string_free(char *s);

/**
 * Creates a theta handle from the coefficients of
 * k theta^2 + l theta + m = 0.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
RmStatus rm_theta_new(int64_t k, int64_t l, int64_t m, RmTheta **out);

/**
 * Releases a theta handle.
 *
 * # Safety
 * `theta` must come from [`rm_theta_new`] and not be freed twice; null is
 * ignored.
 */
void rm_theta_free(RmTheta *theta);

/**
 * The discriminant of theta as a decimal string.
 *
 * # Safety
 * `theta` must be a live handle; `out` must point to writable storage for
 * one pointer.
 */
RmStatus rm_theta_discriminant(const RmTheta *theta, char **out);

/**
 * The continued fraction of theta as JSON
 * `{"theta": ..., "preperiod": [...], "period": [...]}`.
 *
 * # Safety
 * `theta` must be a live handle; `out` must point to writable storage for
 * one pointer.
 */
RmStatus rm_theta_continued_fraction_json(const RmTheta *theta, char **out);

/**
 * GL(2,Z) equivalence of two thetas. `out_equivalent` receives 0 or 1;
 * `out_json`, when non-null, receives the full report with the witness.
 *
 * # Safety
 * `first` and `second` must be live handles; `out_equivalent` must be
 * writable; `out_json` may be null.
 */
RmStatus rm_theta_equivalent(const RmTheta *first,
                             const RmTheta *second,
                             int32_t *out_equivalent,
                             char **out_json);

/**
 * Fundamental unit of discriminant d: t and u as decimal strings plus the
 * norm (+1 or -1).
 *
 * # Safety
 * `out_t`, `out_u` and `out_norm` must point to writable storage.
 */
RmStatus rm_fundamental_unit(int64_t d, char **out_t, char **out_u, int32_t *out_norm);

/**
 * Pell report for discriminant d as JSON: the fundamental unit and all
 * solutions with u <= bound.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
RmStatus rm_pell_json(int64_t d, uint64_t bound, char **out);

/**
 * Unit power report as JSON: epsilon_0^power over the principal theta of
 * discriminant d, with trace coordinates.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
RmStatus rm_unit_json(int64_t d, int64_t power, char **out);

/**
 * K-groups of the Cuntz-Pimsner algebra of (theta, epsilon_0^power, g).
 * `g` is row-major length 4 and must be unimodular; the JSON schema is the
 * CLI's `kgroups --json`.
 *
 * # Safety
 * `theta` must be a live handle; `g` must point to 4 readable ints or be
 * null for the identity; `out` must point to writable storage.
 */
RmStatus rm_kgroups_json(const RmTheta *theta, int64_t power, const int64_t *g, char **out);

/**
 * Morita comparison of two algebras given by handles, unit powers and
 * optional g matrices (null = identity). `out_equivalent` receives 0 or 1;
 * `out_json`, when non-null, receives both K-group records.
 *
 * # Safety
 * Handles must be live; matrix pointers must be null or point to 4
 * readable ints; `out_equivalent` must be writable; `out_json` may be
 * null.
 */
RmStatus rm_morita_equivalent(const RmTheta *first,
                              int64_t n1,
                              const int64_t *g1,
                              const RmTheta *second,
                              int64_t n2,
                              const int64_t *g2,
                              int32_t *out_equivalent,
                              char **out_json);

/**
 * Parses a GL(2,Z) matrix from the CLI's "a,b;c,d" syntax and writes the
 * four entries row-major; a convenience for binders.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must point to 4
 * writable i64 slots.
 */
RmStatus rm_parse_matrix(const char *text, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REALMULT_H */
