/* C interface to the ovdiam reduction library. */

#ifndef OVDIAM_H
#define OVDIAM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Distance value standing for "unreachable".
 */
#define OVD_INFINITY UINT64_MAX

/**
 * Result of every API call.
 */
typedef enum OvdStatus {
  OvdStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  OvdStatus_NullArgument = 1,
  /**
   * Input text was not valid UTF-8.
   */
  OvdStatus_Utf8 = 2,
  /**
   * Input text did not parse as an instance.
   */
  OvdStatus_Parse = 3,
  /**
   * Generation parameters out of range.
   */
  OvdStatus_InvalidParams = 4,
  /**
   * Generation failed to certify an instance within its attempt budget.
   */
  OvdStatus_BudgetExhausted = 5,
  /**
   * The instance admits an orthogonal triple, so no reduction exists.
   */
  OvdStatus_OrthogonalTriple = 6,
  /**
   * The reduction would exceed library limits.
   */
  OvdStatus_TooLarge = 7,
  /**
   * A numeric argument was out of range.
   */
  OvdStatus_OutOfRange = 8,
  /**
   * A verification step rejected the build.
   */
  OvdStatus_VerifyFailed = 9,
} OvdStatus;

/**
 * Opaque set of 0/1 vectors.
 */
typedef struct OvdInstance OvdInstance;

/**
 * Opaque reduction graph built from an instance.
 */
typedef struct OvdReduction OvdReduction;

/**
 * Size accounting of a reduction, mirroring its internal report.
 */
typedef struct OvdSizes {
  uintptr_t n;
  uintptr_t ell;
  uintptr_t vertices;
  uintptr_t arcs;
  uintptr_t hub_arcs;
  uintptr_t regular_arcs;
  uintptr_t index_switching_arcs;
  uintptr_t skew_arcs;
  uintptr_t abc;
  uintptr_t ab;
  uintptr_t adx;
  uintptr_t ady;
  uintptr_t dc;
  uintptr_t dcb;
} OvdSizes;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the textual instance format ("N L" header, one 0/1 row per line).
 *
 * # Safety
 * `text` must point to a NUL-terminated byte string; `out` must be a valid
 * pointer. On `Ok`, `*out` owns a new handle for [`ovd_instance_free`].
 */
enum OvdStatus ovd_instance_parse(const char *text, struct OvdInstance **out);

/**
 * Generates a certified random instance. `mode` 0 keeps the instance free
 * of orthogonal triples (hence quadruples); `mode` 1 additionally plants an
 * orthogonal quadruple, whose indices can be recovered with
 * [`ovd_find_orthogonal_tuple`].
 *
 * # Safety
 * `out` must be a valid pointer. On `Ok`, `*out` owns a new handle for
 * [`ovd_instance_free`].
 */
enum OvdStatus ovd_instance_generate(uintptr_t n,
                                     uintptr_t ell,
                                     uint32_t mode,
                                     double density,
                                     uint64_t seed,
                                     struct OvdInstance **out);

/**
 * Reports the vector count and vector length of an instance.
 *
 * # Safety
 * All pointers must be valid; `inst` must be a live instance handle.
 */
enum OvdStatus ovd_instance_counts(const struct OvdInstance *inst, uintptr_t *n, uintptr_t *ell);

/**
 * Serializes an instance back to its textual format.
 *
 * # Safety
 * `inst` must be a live instance handle; `out` must be a valid pointer. On
 * `Ok`, `*out` owns a NUL-terminated string for [`ovd_string_free`].
 */
enum OvdStatus ovd_instance_write(const struct OvdInstance *inst, char **out);

/**
 * Searches for the lexicographically first orthogonal k-tuple
 * (non-decreasing indices, k between 2 and 4). On `Ok`, `*found` says
 * whether one exists, and if so `indices[0..k]` holds it.
 *
 * # Safety
 * `inst` must be a live instance handle; `indices` must point to at least
 * `k` writable elements; `found` must be a valid pointer.
 */
enum OvdStatus ovd_find_orthogonal_tuple(const struct OvdInstance *inst,
                                         uintptr_t k,
                                         uintptr_t *indices,
                                         bool *found);

/**
 * Builds the reduction graph of a triple-free instance.
 *
 * # Safety
 * `inst` must be a live instance handle; `out` must be a valid pointer. On
 * `Ok`, `*out` owns a new handle for [`ovd_reduction_free`].
 */
enum OvdStatus ovd_reduce(const struct OvdInstance *inst, struct OvdReduction **out);

/**
 * Copies the size accounting of a reduction into `sizes`.
 *
 * # Safety
 * `reduction` must be a live reduction handle; `sizes` must be valid.
 */
enum OvdStatus ovd_reduction_sizes(const struct OvdReduction *reduction, struct OvdSizes *sizes);

/**
 * Serializes the reduction graph in DIMACS shortest-path format.
 *
 * # Safety
 * `reduction` must be a live reduction handle; `out` must be valid. On
 * `Ok`, `*out` owns a NUL-terminated string for [`ovd_string_free`].
 */
enum OvdStatus ovd_reduction_write_graph(const struct OvdReduction *reduction, char **out);

/**
 * Serializes one "<id>\t<label>" line per vertex.
 *
 * # Safety
 * Same contract as [`ovd_reduction_write_graph`].
 */
enum OvdStatus ovd_reduction_write_labels(const struct OvdReduction *reduction, char **out);

/**
 * Exact diameter over all ordered pairs; `OVD_INFINITY` when some pair is
 * unreachable. `source`/`target` receive the 0-based argmax pair.
 *
 * # Safety
 * `reduction` must be a live reduction handle; output pointers must be valid.
 */
enum OvdStatus ovd_exact_diameter(const struct OvdReduction *reduction,
                                  uint64_t *value,
                                  uint32_t *source,
                                  uint32_t *target);

/**
 * 2-approximation of the diameter from one pivot vertex (0-based); pass a
 * negative pivot for the default. The estimate `e` satisfies
 * `e <= diameter <= 2e` on strongly connected graphs.
 *
 * # Safety
 * `reduction` must be a live reduction handle; `value` must be valid.
 */
enum OvdStatus ovd_two_approx(const struct OvdReduction *reduction, int64_t pivot, uint64_t *value);

/**
 * Builds the reduction, measures the exact diameter, and cross-checks the
 * 4-vs-7 dichotomy. On `Ok`, `verdict` is 0 when the diameter is 4 (no
 * orthogonal quadruple) and 1 when it is at least 7 (quadruple present).
 *
 * # Safety
 * `inst` must be a live instance handle; output pointers must be valid.
 */
enum OvdStatus ovd_gap_verdict(const struct OvdInstance *inst,
                               uint32_t *verdict,
                               uint64_t *diameter);

/**
 * Releases an instance handle. Null is a no-op.
 *
 * # Safety
 * `inst` must be null or a handle returned by this library, not yet freed.
 */
void ovd_instance_free(struct OvdInstance *inst);

/**
 * Releases a reduction handle. Null is a no-op.
 *
 * # Safety
 * `reduction` must be null or a handle returned by this library, not yet
 * freed.
 */
void ovd_reduction_free(struct OvdReduction *reduction);

/**
 * Releases a string returned through a `char**` output. Null is a no-op.
 *
 * # Safety
 * `text` must be null or a string returned by this library, not yet freed.
 */
void ovd_string_free(char *text);

/**
 * Static description of a status code; never null.
 */
const char *ovd_status_message(enum OvdStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OVDIAM_H */
