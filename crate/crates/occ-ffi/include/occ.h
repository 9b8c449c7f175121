#ifndef OCC_FFI_H
#define OCC_FFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every FFI call.
 */
typedef enum OccStatus {
  /**
   * Success.
   */
  OccStatus_Ok = 0,
  /**
   * A pointer argument was null or not valid UTF-8.
   */
  OccStatus_InvalidArgument = 1,
  /**
   * Input failed validation (KB, scenario, stimulus or params).
   */
  OccStatus_ValidationError = 2,
  /**
   * The replay itself failed (e.g. double prospect resolution).
   */
  OccStatus_RuntimeError = 3,
} OccStatus;

/**
 * Opaque engine handle: an immutable knowledge base plus parameters.
 */
typedef struct OccEngine OccEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Borrowed pointer;
 * valid until the next FFI call from the same thread. Never null.
 */
const char *occ_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by an `occ_*` call,
 * not yet freed.
 */
void occ_string_free(char *s);

/**
 * Create an engine from a KB document and an optional params-override
 * document (pass null for defaults). On success `*out_engine` owns the
 * engine; release with `occ_engine_free`.
 *
 * # Safety
 * `kb_json` must be a NUL-terminated string; `params_json` null or the
 * same; `out_engine` must be a valid writable pointer.
 */
enum OccStatus occ_engine_new(const char *kb_json,
                              const char *params_json,
                              struct OccEngine **out_engine);

/**
 * Destroy an engine.
 *
 * # Safety
 * `engine` must be null or a pointer from `occ_engine_new`, not yet freed.
 */
void occ_engine_free(struct OccEngine *engine);

/**
 * Replay a scenario document and return the trace as an owned string.
 * `profile` is one of "full22", "ortony", "ekman6"; `mode` is "dominant"
 * or "blend"; `format` is "jsonl" or "csv".
 *
 * # Safety
 * `engine` must be live; string arguments NUL-terminated; `out_trace`
 * writable.
 */
enum OccStatus occ_engine_run_scenario(const struct OccEngine *engine,
                                       const char *scenario_json,
                                       const char *profile,
                                       const char *mode,
                                       const char *format,
                                       char **out_trace);

/**
 * One-shot appraisal of a stimulus document against an empty history at
 * t=0. Returns the fired signals as JSON lines (possibly empty).
 *
 * # Safety
 * `engine` must be live; `stimulus_json` NUL-terminated; `out_signals`
 * writable.
 */
enum OccStatus occ_engine_appraise(const struct OccEngine *engine,
                                   const char *stimulus_json,
                                   char **out_signals);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OCC_FFI_H */
