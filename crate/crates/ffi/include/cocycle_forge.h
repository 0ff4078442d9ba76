#ifndef COCYCLE_FORGE_H
#define COCYCLE_FORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum CfStatus {
  CF_STATUS_OK = 0,
  CF_STATUS_NULL_ARGUMENT = 1,
  CF_STATUS_INVALID_ARGUMENT = 2,
  CF_STATUS_PARSE_ERROR = 3,
  CF_STATUS_VALIDATION_ERROR = 4,
  CF_STATUS_PANIC = 5,
} CfStatus;

typedef enum CfGraphKind {
  CF_GRAPH_KIND_ELEMENT = 0,
  CF_GRAPH_KIND_GENERATOR = 1,
} CfGraphKind;

/**
 * Opaque validated idempotent cocycle.
 */
typedef struct CfCocycle CfCocycle;

/**
 * Opaque finite group.
 */
typedef struct CfGroup CfGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a
 * success. Valid until the next `cf_*` call on the same thread.
 */
const char *cf_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void cf_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum CfStatus cf_group_cyclic(size_t n, struct CfGroup **out);

/**
 * The dihedral group of order `2m`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum CfStatus cf_group_dihedral(size_t m, struct CfGroup **out);

/**
 * Validates a row-major `n x n` Cayley table with identity `0`.
 *
 * # Safety
 * `table` must point to `n * n` readable values; `out` must be writable.
 */
enum CfStatus cf_group_from_table(const size_t *table, size_t n, struct CfGroup **out);

/**
 * Order of the group, or 0 for NULL.
 *
 * # Safety
 * `group` must be NULL or a live handle.
 */
size_t cf_group_order(const struct CfGroup *group);

/**
 * # Safety
 * `group` must be NULL or a live handle, freed once.
 */
void cf_group_free(struct CfGroup *group);

/**
 * Builds and validates a cocycle from `n * n` row-major bytes, non-zero
 * meaning 1.
 *
 * # Safety
 * `group` must be live, `bits` must hold `len` bytes and `out` be writable.
 */
enum CfStatus cf_cocycle_from_table(const struct CfGroup *group,
                                    const uint8_t *bits,
                                    size_t len,
                                    struct CfCocycle **out);

/**
 * Parses the text table format: `n` lines of `n` characters `0`/`1`.
 *
 * # Safety
 * `group` must be live, `text` a NUL-terminated string and `out` writable.
 */
enum CfStatus cf_cocycle_from_text(const struct CfGroup *group,
                                   const char *text,
                                   struct CfCocycle **out);

/**
 * `f_r` for a semilinear map `r` into the additive naturals.
 *
 * # Safety
 * `group` must be live, `values` must hold `len` entries and `out` be writable.
 */
enum CfStatus cf_cocycle_from_r(const struct CfGroup *group,
                                const uint64_t *values,
                                size_t len,
                                struct CfCocycle **out);

/**
 * # Safety
 * `cocycle` must be live and `out` writable.
 */
enum CfStatus cf_cocycle_get(const struct CfCocycle *cocycle, size_t s, size_t t, uint8_t *out);

/**
 * Writes one byte per group element into `members` (1 for elements of
 * the inertial group) and its size into `size`.
 *
 * # Safety
 * `cocycle` must be live, `members` must hold `len >= n` bytes and `size` be writable.
 */
enum CfStatus cf_cocycle_inertial(const struct CfCocycle *cocycle,
                                  uint8_t *members,
                                  size_t len,
                                  size_t *size);

/**
 * The least `t` with `J^(t+1) = 0`.
 *
 * # Safety
 * `cocycle` must be live and `out` writable.
 */
enum CfStatus cf_cocycle_nilpotency(const struct CfCocycle *cocycle, size_t *out);

/**
 * The class decomposition report, one part per line.
 *
 * # Safety
 * `cocycle` must be live and `out` writable; free the result with `cf_string_free`.
 */
enum CfStatus cf_cocycle_decompose_classes(const struct CfCocycle *cocycle, char **out);

/**
 * # Safety
 * `cocycle` must be live and `out` writable; free the result with `cf_string_free`.
 */
enum CfStatus cf_cocycle_graph_dot(const struct CfCocycle *cocycle,
                                   enum CfGraphKind kind,
                                   char **out);

/**
 * The table in text form.
 *
 * # Safety
 * `cocycle` must be live and `out` writable; free the result with `cf_string_free`.
 */
enum CfStatus cf_cocycle_to_text(const struct CfCocycle *cocycle, char **out);

/**
 * # Safety
 * `cocycle` must be NULL or a live handle, freed once.
 */
void cf_cocycle_free(struct CfCocycle *cocycle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COCYCLE_FORGE_H */
