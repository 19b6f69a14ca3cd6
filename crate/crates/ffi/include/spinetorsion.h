#ifndef SPINETORSION_H
#define SPINETORSION_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_POINTER = 1,
  ST_STATUS_INVALID_UTF8 = 2,
  /**
   * Input failed to parse or validate.
   */
  ST_STATUS_VALIDATION = 3,
  /**
   * The requested move does not apply or would leave a non-standard spine.
   */
  ST_STATUS_NOT_APPLICABLE = 4,
  /**
   * Homology is nonzero and no basis was requested.
   */
  ST_STATUS_NOT_ACYCLIC = 5,
  /**
   * Any other computation error.
   */
  ST_STATUS_COMPUTATION = 6,
  ST_STATUS_USAGE = 7,
  ST_STATUS_PANIC = 8,
} StStatus;

/**
 * Opaque handle to a validated branched spine.
 */
typedef struct StSpine StSpine;

/**
 * Parse and validate a spine file held in `text`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum StStatus st_spine_parse(const char *text, struct StSpine **out);

/**
 * Release a spine handle. Null is ignored.
 *
 * # Safety
 * `spine` must come from this library and not be used afterwards.
 */
void st_spine_free(struct StSpine *spine);

/**
 * # Safety
 * `spine` must be a live handle; `out` must be writable.
 */
enum StStatus st_spine_tet_count(const struct StSpine *spine, size_t *out);

/**
 * χ(P) and χ(X(P)).
 *
 * # Safety
 * `spine` must be a live handle; both outputs must be writable.
 */
enum StStatus st_spine_euler_characteristics(const struct StSpine *spine,
                                             int64_t *chi_p,
                                             int64_t *chi_x);

/**
 * Canonical spine file text.
 *
 * # Safety
 * `spine` must be a live handle; `out` must be writable.
 */
enum StStatus st_spine_serialize(const struct StSpine *spine, char **out);

/**
 * JSON summary (counts, Euler characteristics, H₁, boundary).
 *
 * # Safety
 * `spine` must be a live handle; `out` must be writable.
 */
enum StStatus st_spine_summary_json(const struct StSpine *spine, char **out);

/**
 * JSON torsion report for `rep` (`trivial`, `free-abelian`, `cyclic:N[:CHAR]`).
 *
 * # Safety
 * `spine` must be a live handle, `rep` a NUL-terminated string and `out` writable.
 */
enum StStatus st_torsion_json(const struct StSpine *spine,
                              const char *rep,
                              bool sign_refined,
                              bool auto_basis,
                              char **out);

/**
 * JSON Euler chain class and maw cochain.
 *
 * # Safety
 * `spine` must be a live handle; `out` must be writable.
 */
enum StStatus st_euler_json(const struct StSpine *spine, char **out);

/**
 * 2→3 move across face class `face`; `variant` 0 or 1.
 *
 * # Safety
 * `spine` must be a live handle; `out` must be writable.
 */
enum StStatus st_move_positive(const struct StSpine *spine,
                               size_t face,
                               uint8_t variant,
                               struct StSpine **out);

/**
 * 3→2 move removing edge class `edge`.
 *
 * # Safety
 * `spine` must be a live handle; `out` must be writable.
 */
enum StStatus st_move_negative(const struct StSpine *spine, size_t edge, struct StSpine **out);

/**
 * Number of branched spines with `tets` vertices up to isomorphism.
 *
 * # Safety
 * `out` must be writable.
 */
enum StStatus st_census_count(size_t tets, size_t *out);

/**
 * Message of the last failing call on this thread, or null.
 *
 * # Safety
 * The returned string must be released with `st_string_free`.
 */
char *st_last_error_message(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void st_string_free(char *s);

#endif /* SPINETORSION_H */
