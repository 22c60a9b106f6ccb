/* C ABI for the alpay-workbench engine. Reports are UTF-8 JSON strings; free them with aw_string_free. */

#ifndef ALPAY_WORKBENCH_H
#define ALPAY_WORKBENCH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every ABI call.
 */
typedef enum AwStatus {
  /**
   * The operation ran; any check it performed passed.
   */
  AW_STATUS_OK = 0,
  /**
   * Null pointer, invalid UTF-8, unknown name, or bad argument.
   */
  AW_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The input document or formula did not parse or resolve.
   */
  AW_STATUS_PARSE_ERROR = 2,
  /**
   * The operation ran and the audited property does not hold.
   */
  AW_STATUS_CHECK_FAILED = 3,
  /**
   * The formula could not be evaluated against this algebra.
   */
  AW_STATUS_EVAL_ERROR = 4,
} AwStatus;

/**
 * Opaque handle to a loaded algebra.
 */
typedef struct AwAlgebra AwAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *aw_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by this library and
 * not yet freed.
 */
void aw_string_free(char *s);

/**
 * Parses a JSON spec document into a fresh handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum AwStatus aw_algebra_from_json(const char *json, struct AwAlgebra **out);

/**
 * Loads a built-in algebra (COUNTER5, CYCLE3, DIAMOND, SELFLOOP, BADLOOP,
 * TWOPEAKS) into a fresh handle.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum AwStatus aw_algebra_builtin(const char *name, struct AwAlgebra **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `alg` must be null or a handle from this library, not yet freed.
 */
void aw_algebra_free(struct AwAlgebra *alg);

/**
 * Serializes the algebra to its canonical JSON document.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be a valid pointer.
 */
enum AwStatus aw_algebra_to_json(const struct AwAlgebra *alg, char **out);

/**
 * Runs the exhaustive axiom audit. `Ok` = all axioms hold, `CheckFailed`
 * = some axiom is violated; the JSON report is written either way.
 *
 * # Safety
 * `alg` must be a live handle; `report_json` must be a valid pointer.
 */
enum AwStatus aw_validate(const struct AwAlgebra *alg, char **report_json);

/**
 * Iterates the update rule from `from` (or the spec's initial state when
 * `from` is null). `Ok` = a fixed point was reached; `CheckFailed` = the
 * run cycled or exhausted the budget.
 *
 * # Safety
 * `alg` must be a live handle; `from` null or NUL-terminated; `out` valid.
 */
enum AwStatus aw_run_trajectory(const struct AwAlgebra *alg,
                                const char *from,
                                unsigned int budget,
                                char **out);

/**
 * Runs the termination audit from every state. `Ok` = every state
 * converges within the strict-increase bound; `CheckFailed` otherwise
 * (including refusal when the axioms fail, reported in the JSON).
 *
 * # Safety
 * `alg` must be a live handle; `out` must be a valid pointer.
 */
enum AwStatus aw_audit_termination(const struct AwAlgebra *alg, char **out);

/**
 * Betti numbers, torsion, and the graph oracle under an edge policy
 * (two-cells are not exposed over the ABI; use the CLI for those).
 *
 * # Safety
 * `alg` must be a live handle; `out` must be a valid pointer.
 */
enum AwStatus aw_homology(const struct AwAlgebra *alg,
                          int edges_all,
                          int drop_self_loops,
                          char **out);

/**
 * Model-checks a formula; the report lists the satisfying states. `Ok`
 * regardless of how many states satisfy it — only evaluation failures
 * return an error status.
 *
 * # Safety
 * `alg` must be a live handle; `formula` NUL-terminated; `out` valid.
 */
enum AwStatus aw_model_check(const struct AwAlgebra *alg, const char *formula, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ALPAY_WORKBENCH_H */
