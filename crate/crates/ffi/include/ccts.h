/* SPDX-License-Identifier: Apache-2.0 */

#ifndef CCTS_H
#define CCTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CctsStatus {
  CCTS_STATUS_OK = 0,
  CCTS_STATUS_NULL_ARGUMENT = 1,
  CCTS_STATUS_INVALID_UTF8 = 2,
  CCTS_STATUS_PARSE = 3,
  CCTS_STATUS_NOT_STAR = 4,
  CCTS_STATUS_LIMIT_EXCEEDED = 5,
  CCTS_STATUS_PANIC = 6,
  CCTS_STATUS_OUT_OF_RANGE = 7,
} CctsStatus;

typedef enum CctsOutcomeKind {
  CCTS_OUTCOME_KIND_SOLVABLE = 0,
  CCTS_OUTCOME_KIND_UNSOLVABLE = 1,
  CCTS_OUTCOME_KIND_LIMIT_EXCEEDED = 2,
} CctsOutcomeKind;

/**
 * Opaque CCTS instance.
 */
typedef struct CctsInstance CctsInstance;

/**
 * Opaque result of an exhaustive search.
 */
typedef struct CctsOutcome CctsOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *ccts_last_error_message(void);

/**
 * Library version, static storage.
 */
const char *ccts_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void ccts_string_free(char *s);

/**
 * Parse an instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CctsStatus ccts_instance_parse(const char *json, struct CctsInstance **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from this library, freed once.
 */
void ccts_instance_free(struct CctsInstance *inst);

/**
 * Number of base-graph vertices; 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t ccts_instance_vertex_count(const struct CctsInstance *inst);

/**
 * Number of colors; 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t ccts_instance_color_count(const struct CctsInstance *inst);

/**
 * Breadth-first search. Running out of budget is not an error: the
 * outcome reports it.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum CctsStatus ccts_solve(const struct CctsInstance *inst,
                           size_t max_states,
                           struct CctsOutcome **out);

/**
 * # Safety
 * `outcome` must be a live handle.
 */
enum CctsOutcomeKind ccts_outcome_kind(const struct CctsOutcome *outcome);

/**
 * # Safety
 * `outcome` must be NULL or a live handle.
 */
size_t ccts_outcome_states_explored(const struct CctsOutcome *outcome);

/**
 * Witness length; 0 when there is no witness.
 *
 * # Safety
 * `outcome` must be NULL or a live handle.
 */
size_t ccts_outcome_witness_len(const struct CctsOutcome *outcome);

/**
 * The `index`-th swap of the witness.
 *
 * # Safety
 * `outcome` must be a live handle; `u` and `v` must be writable.
 */
enum CctsStatus ccts_outcome_witness_swap(const struct CctsOutcome *outcome,
                                          size_t index,
                                          size_t *u,
                                          size_t *v);

/**
 * Outcome as JSON; free with [`ccts_string_free`]. NULL for NULL.
 *
 * # Safety
 * `outcome` must be NULL or a live handle.
 */
char *ccts_outcome_to_json(const struct CctsOutcome *outcome);

/**
 * # Safety
 * `outcome` must be NULL or a handle from this library, freed once.
 */
void ccts_outcome_free(struct CctsOutcome *outcome);

/**
 * Star swap-graph decision. `verdict_json` may be NULL; otherwise it
 * receives the verdict document.
 *
 * # Safety
 * `inst` must be a live handle; `solvable` must be writable;
 * `verdict_json` must be NULL or writable.
 */
enum CctsStatus ccts_decide_star(const struct CctsInstance *inst,
                                 size_t oracle_budget,
                                 bool *solvable,
                                 char **verdict_json);

/**
 * Check a solution document against an instance.
 *
 * # Safety
 * `inst` must be a live handle; `solution_json` a NUL-terminated string;
 * `valid` writable.
 */
enum CctsStatus ccts_verify(const struct CctsInstance *inst,
                            const char *solution_json,
                            bool *valid);

/**
 * Reduce an NCL document. `layout_json` may be NULL; otherwise it
 * receives the gadget layout.
 *
 * # Safety
 * `ncl_json` must be a NUL-terminated string; `out` writable;
 * `layout_json` NULL or writable.
 */
enum CctsStatus ccts_ncl_reduce(const char *ncl_json,
                                bool cubic,
                                struct CctsInstance **out,
                                char **layout_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CCTS_H */
