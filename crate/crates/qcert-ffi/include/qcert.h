#ifndef QCERT_H
#define QCERT_H

/* Generated by cbindgen from crates/qcert-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Family codes accepted by [`qcert_matrix_build`].
 */
#define QCERT_FAMILY_D 0

#define QCERT_FAMILY_W 1

#define QCERT_FAMILY_H 2

/**
 * Result codes of every fallible call.
 */
typedef enum QcertStatus {
  QCERT_STATUS_OK = 0,
  QCERT_STATUS_NULL_POINTER = 1,
  QCERT_STATUS_INVALID_ARGUMENT = 2,
  QCERT_STATUS_DOMAIN = 3,
  QCERT_STATUS_HOMOGENEITY = 4,
  QCERT_STATUS_CONVERGENCE = 5,
  QCERT_STATUS_DEGENERATE = 6,
  QCERT_STATUS_INPUT = 7,
  QCERT_STATUS_INCONSISTENT = 8,
  QCERT_STATUS_PANIC = 9,
} QcertStatus;

/**
 * Exact definiteness classes.
 */
typedef enum QcertClassification {
  QCERT_CLASSIFICATION_POSITIVE_DEFINITE = 0,
  QCERT_CLASSIFICATION_POSITIVE_SEMIDEFINITE_SINGULAR = 1,
  QCERT_CLASSIFICATION_INDEFINITE = 2,
  QCERT_CLASSIFICATION_NEGATIVE_DEFINITE = 3,
  QCERT_CLASSIFICATION_NEGATIVE_SEMIDEFINITE_SINGULAR = 4,
} QcertClassification;

/**
 * A built Pohozaev matrix with exact entries.
 */
typedef struct QcertMatrix QcertMatrix;

/**
 * The reports of one acceptance suite.
 */
typedef struct QcertReports QcertReports;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last error on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *qcert_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a pointer returned by this library and not yet freed.
 */
void qcert_string_free(char *s);

/**
 * Builds the Pohozaev matrix of the given order (4 or 6), family code,
 * dimension n and index s. On success `*out` owns a new handle.
 *
 * # Safety
 * `out` must be NULL or valid for a pointer write.
 */
enum QcertStatus qcert_matrix_build(uint32_t order,
                                    uint32_t family,
                                    int64_t n,
                                    int64_t s,
                                    struct QcertMatrix **out);

/**
 * Releases a matrix handle. NULL is ignored.
 *
 * # Safety
 * `m` must be NULL or a handle from [`qcert_matrix_build`] not yet freed.
 */
void qcert_matrix_free(struct QcertMatrix *m);

/**
 * Matrix dimension, or 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
size_t qcert_matrix_dim(const struct QcertMatrix *m);

/**
 * Exact entries as JSON (rational strings plus the shared pi half-power),
 * or NULL on a NULL handle. Free with [`qcert_string_free`].
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
char *qcert_matrix_json(const struct QcertMatrix *m);

/**
 * Classifies the matrix exactly.
 *
 * # Safety
 * `m` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum QcertStatus qcert_matrix_classify(const struct QcertMatrix *m, enum QcertClassification *out);

/**
 * Solves the linearized system of the given order (2, 4 or 6) and writes
 * Gamma_1..Gamma_{s+3} as a JSON array of rational strings to `*out`.
 *
 * # Safety
 * `out` must be NULL or valid for a pointer write.
 */
enum QcertStatus qcert_linsys_gamma_json(uint32_t order,
                                         int64_t n,
                                         int64_t k,
                                         int64_t s,
                                         char **out);

/**
 * Runs acceptance suite `criterion` (1..8) and stores its reports in a new
 * handle. Criterion 6 includes the transcribed-table cross-checks.
 *
 * # Safety
 * `out` must be NULL or valid for a pointer write.
 */
enum QcertStatus qcert_run_criterion(uint32_t criterion, struct QcertReports **out);

/**
 * Number of reports, or 0 for NULL.
 *
 * # Safety
 * `r` must be NULL or a live handle.
 */
size_t qcert_reports_len(const struct QcertReports *r);

/**
 * Number of reports whose verdict is not pass, or 0 for NULL.
 *
 * # Safety
 * `r` must be NULL or a live handle.
 */
size_t qcert_reports_failed(const struct QcertReports *r);

/**
 * All reports as JSON lines, or NULL for a NULL handle. Free with
 * [`qcert_string_free`].
 *
 * # Safety
 * `r` must be NULL or a live handle.
 */
char *qcert_reports_json_lines(const struct QcertReports *r);

/**
 * Releases a reports handle. NULL is ignored.
 *
 * # Safety
 * `r` must be NULL or a handle from [`qcert_run_criterion`] not yet freed.
 */
void qcert_reports_free(struct QcertReports *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCERT_H */
