/* C interface for the hochschild cohomology engine.
* Generated by cbindgen from crates/hochschild-capi; do not edit by hand. */

#ifndef HOCHSCHILD_H
#define HOCHSCHILD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum HochStatus {
  /**
   * The call succeeded; out-parameters are populated.
   */
  HochStatus_Ok = 0,
  /**
   * The problem document was unreadable or ill-formed.
   */
  HochStatus_InputError = 1,
  /**
   * The engine hit a resource limit (degree cap, solve window).
   */
  HochStatus_EngineError = 2,
  /**
   * A required pointer argument was null.
   */
  HochStatus_NullArgument = 3,
  /**
   * A string argument was not valid UTF-8.
   */
  HochStatus_InvalidUtf8 = 4,
  /**
   * An internal invariant was violated; the library state is still sound.
   */
  HochStatus_InternalPanic = 5,
} HochStatus;

/**
 * Opaque result handle. Allocate with `hoch_run_json`, read through the
 * accessors, release with `hoch_report_free`.
 */
typedef struct HochReport HochReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library, as a static NUL-terminated string.
 */
const char *hoch_version(void);

/**
 * Message describing the most recent failure on this thread, or an empty
 * string if none. The pointer is invalidated by the next failing call.
 */
const char *hoch_last_error(void);

/**
 * Parses and solves the problem document in `problem_json`.
 *
 * `max_degree` bounds the cohomological degree for algebra and invariant
 * problems; `to_order` is the target order for continuation problems; each
 * is ignored by the other kinds. On `Ok`, `*out_report` owns a new handle.
 */
enum HochStatus hoch_run_json(const char *problem_json,
                              uint32_t max_degree,
                              uint32_t to_order,
                              struct HochReport **out_report);

/**
 * JSON rendering of the report, owned by the handle.
 */
const char *hoch_report_json(const struct HochReport *report);

/**
 * Human-readable rendering of the report, owned by the handle.
 */
const char *hoch_report_text(const struct HochReport *report);

/**
 * Releases a handle produced by `hoch_run_json`. Null is a safe no-op.
 */
void hoch_report_free(struct HochReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOCHSCHILD_H */
