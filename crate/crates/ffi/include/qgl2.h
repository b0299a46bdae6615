#ifndef QGL2_H
#define QGL2_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum Qgl2Status {
  QGL2_STATUS_OK = 0,
  QGL2_STATUS_NULL_POINTER = 1,
  QGL2_STATUS_INVALID_UTF8 = 2,
  QGL2_STATUS_PARSE_ERROR = 3,
  QGL2_STATUS_INVALID_ARGUMENT = 4,
  QGL2_STATUS_OUT_OF_RANGE = 5,
  /**
   * The requested value does not exist for this outcome (e.g. `p` of a
   * Jordanian classification).
   */
  QGL2_STATUS_NOT_AVAILABLE = 6,
  QGL2_STATUS_PANIC = 7,
} Qgl2Status;

typedef enum Qgl2Case {
  QGL2_CASE_DRINFELD_JIMBO = 0,
  QGL2_CASE_JORDANIAN = 1,
  QGL2_CASE_CLASSICAL = 2,
  QGL2_CASE_DEGENERATE = 3,
} Qgl2Case;

typedef enum Qgl2Parameter {
  QGL2_PARAMETER_Q = 0,
  QGL2_PARAMETER_P = 1,
  QGL2_PARAMETER_H = 2,
  QGL2_PARAMETER_H_PRIME = 3,
  QGL2_PARAMETER_P_RECIPROCAL = 4,
  QGL2_PARAMETER_DISCRIMINANT = 5,
} Qgl2Parameter;

/**
 * Result of classifying one `(h0, r0, p0)` triple.
 */
typedef struct Qgl2Classification Qgl2Classification;

typedef struct Qgl2Plane Qgl2Plane;

typedef struct Qgl2RelationSet Qgl2RelationSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread. Owned by the
 * library; valid until the next call on the same thread.
 */
const char *qgl2_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void qgl2_string_free(char *s);

/**
 * Classifies the plane `xi^2 = h0 xi eta, eta^2 = r0 xi eta, eta xi = -p0 xi eta`.
 * Parameters use the rational syntax `[-]digits[/digits]`.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out` must
 * be null or valid for writes.
 */
enum Qgl2Status qgl2_classify(const char *h0,
                              const char *r0,
                              const char *p0,
                              struct Qgl2Classification **out);

/**
 * # Safety
 * `c` must be null or a handle from [`qgl2_classify`], not yet freed.
 */
void qgl2_classification_free(struct Qgl2Classification *c);

/**
 * # Safety
 * `c` must be a live classification handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_classification_case(const struct Qgl2Classification *c, enum Qgl2Case *out);

/**
 * # Safety
 * `c` must be a live classification handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_classification_verified(const struct Qgl2Classification *c, bool *out);

/**
 * Writes a newly allocated string with the requested value, or returns
 * `NotAvailable` when the outcome has no such parameter.
 *
 * # Safety
 * `c` must be a live classification handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_classification_parameter(const struct Qgl2Classification *c,
                                              enum Qgl2Parameter which,
                                              char **out);

/**
 * Entry `(row, col)` of the change of generators, rows giving the new
 * differentials in terms of `xi, eta`.
 *
 * # Safety
 * `c` must be a live classification handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_classification_transform_entry(const struct Qgl2Classification *c,
                                                    uintptr_t row,
                                                    uintptr_t col,
                                                    char **out);

/**
 * Runs the quantum-matrix similarity check for the classification.
 *
 * # Safety
 * `c` must be a live classification handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_classification_check_similarity(const struct Qgl2Classification *c, bool *out);

/**
 * The JSON report produced by `qgl2 classify --json`.
 *
 * # Safety
 * `c` must be a live classification handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_classification_report_json(const struct Qgl2Classification *c,
                                                bool with_similarity,
                                                char **out);

/**
 * Drinfeld-Jimbo plane for `GL_{q,p}(2)`; `q` must be non-zero.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out` valid for writes.
 */
enum Qgl2Status qgl2_plane_drinfeld_jimbo(const char *q, const char *p, struct Qgl2Plane **out);

/**
 * Jordanian plane for `GL_{h,h'}(2)`.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out` valid for writes.
 */
enum Qgl2Status qgl2_plane_jordanian(const char *h, const char *h_prime, struct Qgl2Plane **out);

/**
 * Input plane with commutative coordinates and parameters `(h0, r0, p0)`.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out` valid for writes.
 */
enum Qgl2Status qgl2_plane_input(const char *h0,
                                 const char *r0,
                                 const char *p0,
                                 struct Qgl2Plane **out);

/**
 * `plane(alpha=..., beta=..., A=..., B=..., C=...)`.
 *
 * # Safety
 * `plane` must be a live plane handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_plane_to_string(const struct Qgl2Plane *plane, char **out);

/**
 * # Safety
 * `plane` must be null or a handle from a `qgl2_plane_*` constructor, not yet freed.
 */
void qgl2_plane_free(struct Qgl2Plane *plane);

/**
 * Canonical basis of the degree-2 quantum-matrix relations of `plane`.
 *
 * # Safety
 * `plane` must be a live plane handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_manin_relations(const struct Qgl2Plane *plane, struct Qgl2RelationSet **out);

/**
 * Number of relations; 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live relation-set handle.
 */
uintptr_t qgl2_relation_set_len(const struct Qgl2RelationSet *set);

/**
 * Relation `index` rendered as a signed sum of words, e.g. `ab - ba`.
 *
 * # Safety
 * `set` must be a live relation-set handle; `out` valid for writes.
 */
enum Qgl2Status qgl2_relation_set_get(const struct Qgl2RelationSet *set,
                                      uintptr_t index,
                                      char **out);

/**
 * # Safety
 * `set` must be null or a handle from [`qgl2_manin_relations`], not yet freed.
 */
void qgl2_relation_set_free(struct Qgl2RelationSet *set);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGL2_H */
