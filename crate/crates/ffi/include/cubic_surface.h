#ifndef CUBIC_SURFACE_H
#define CUBIC_SURFACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_POINTER = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON, wrong schema, or a bad coordinate.
   */
  CS_STATUS_INVALID_INPUT = 3,
  CS_STATUS_UNKNOWN_COMMAND = 4,
  /**
   * The computation itself failed (degenerate points, Eckardt point, ...).
   */
  CS_STATUS_DOMAIN = 5,
  CS_STATUS_PANIC = 6,
} CsStatus;

/**
 * Opaque handle to a validated set of six points.
 */
typedef struct CsSurface CsSurface;

typedef struct CsOptions {
  uint64_t seed;
  bool full;
  bool census;
  bool split;
} CsOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cs_version(void);

/**
 * Handle for the built-in rational fixture. Never null.
 */
struct CsSurface *cs_surface_fixture(void);

/**
 * Parse a points document (`{"schema": 1, "field": ..., "points": [...]}`)
 * and check that the points are in general position.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CsStatus cs_surface_from_json(const char *json, struct CsSurface **out);

/**
 * # Safety
 * `surface` must come from this library and not have been freed. Null is ignored.
 */
void cs_surface_free(struct CsSurface *surface);

/**
 * Serialize the handle's points back to a points document.
 *
 * # Safety
 * `surface` must be a live handle and `out` a writable pointer.
 */
enum CsStatus cs_surface_points_json(const struct CsSurface *surface, char **out);

/**
 * Run a command (`"construct"`, `"group"`, `"verify-all"`, ...) and return
 * its JSON report. `options` may be null for the defaults. `all_pass` may be
 * null; otherwise it receives whether every checked claim held.
 *
 * # Safety
 * `surface` must be a live handle, `command` a NUL-terminated string,
 * `options` null or valid, and `out` a writable pointer.
 */
enum CsStatus cs_run(const struct CsSurface *surface,
                     const char *command,
                     const struct CsOptions *options,
                     char **out,
                     bool *all_pass);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *cs_last_error(void);

/**
 * # Safety
 * `s` must be a string returned by this library, not yet freed. Null is ignored.
 */
void cs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBIC_SURFACE_H */
