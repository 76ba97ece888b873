#ifndef TILTKIT_H
#define TILTKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values match the exit codes of the `tiltkit` binary where
 * they overlap.
 */
typedef enum TiltkitStatus {
  TILTKIT_STATUS_OK = 0,
  TILTKIT_STATUS_COMPUTATION_ERROR = 1,
  TILTKIT_STATUS_PARSE_ERROR = 2,
  TILTKIT_STATUS_NULL_ARGUMENT = 3,
  TILTKIT_STATUS_INVALID_UTF8 = 4,
  TILTKIT_STATUS_PANIC = 5,
} TiltkitStatus;

/**
 * Opaque session handle.
 */
typedef struct TiltkitSession TiltkitSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a session from DSL text. On success `*out` receives a handle to
 * be released with [`tiltkit_session_free`].
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum TiltkitStatus tiltkit_session_new(const char *text, struct TiltkitSession **out);

/**
 * # Safety
 * `session` must come from [`tiltkit_session_new`] and not be used again.
 */
void tiltkit_session_free(struct TiltkitSession *session);

/**
 * Sets the loop bounds used by [`tiltkit_session_run`].
 *
 * # Safety
 * `session` must be a live handle.
 */
enum TiltkitStatus tiltkit_session_set_options(struct TiltkitSession *session,
                                               int64_t max_degree,
                                               size_t tower_depth,
                                               size_t resolution_length);

/**
 * Runs every command of the session and writes the JSON array of results
 * to `*out_json`. Returns `ComputationError` if any command failed; the
 * JSON is written in that case too.
 *
 * # Safety
 * `session` must be a live handle and `out_json` a valid pointer.
 */
enum TiltkitStatus tiltkit_session_run(const struct TiltkitSession *session, char **out_json);

/**
 * Writes the canonical DSL text of the session to `*out`.
 *
 * # Safety
 * `session` must be a live handle and `out` a valid pointer.
 */
enum TiltkitStatus tiltkit_session_serialize(const struct TiltkitSession *session, char **out);

/**
 * Runs the acceptance battery and writes its JSON report to `*out`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TiltkitStatus tiltkit_battery(uint64_t seed, char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be used again.
 */
void tiltkit_string_free(char *s);

/**
 * The message of the last failure on this thread, or null. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *tiltkit_last_error(void);

/**
 * Library version as a static C string.
 */
const char *tiltkit_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TILTKIT_H */
