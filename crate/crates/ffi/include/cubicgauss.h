#ifndef CUBICGAUSS_H
#define CUBICGAUSS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CgStatus {
  CG_STATUS_OK = 0,
  CG_STATUS_NULL_POINTER = 1,
  CG_STATUS_PARSE = 2,
  CG_STATUS_INVALID_ARGUMENT = 3,
  CG_STATUS_FIELD = 4,
  CG_STATUS_COMPUTATION = 5,
  CG_STATUS_UTF8 = 6,
  CG_STATUS_PANIC = 7,
} CgStatus;

/**
 * Opaque Jacobian-ring handle.
 */
typedef struct CgJacobianRing CgJacobianRing;

/**
 * Opaque polynomial handle.
 */
typedef struct CgPolynomial CgPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the JSON report schema. Static storage; do not free.
 */
const char *cg_schema_version(void);

/**
 * Message of the last failed call on this thread. Valid until the next failing call.
 */
const char *cg_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library and not yet freed.
 */
void cg_string_free(char *s);

/**
 * Parses a polynomial. `vars` is a comma-separated variable list (null: x0..x4);
 * `field` is `q` or `p=<prime>` (null: q).
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum CgStatus cg_polynomial_parse(const char *text_in,
                                  const char *vars,
                                  const char *field,
                                  struct CgPolynomial **out);

/**
 * Canonical text form of a polynomial; free with [`cg_string_free`].
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum CgStatus cg_polynomial_to_string(const struct CgPolynomial *poly, char **out);

/**
 * # Safety
 * `poly` must be null or a handle from this library not yet freed.
 */
void cg_polynomial_free(struct CgPolynomial *poly);

/**
 * Jacobian ring of a form; smoothness is queried separately.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum CgStatus cg_jacobian_ring_new(const struct CgPolynomial *poly, struct CgJacobianRing **out);

/**
 * Writes dim R^0, …, dim R^N into `dims` (capacity `cap`) and N + 1 into `len`.
 * If `cap` is too small only `len` is written and INVALID_ARGUMENT is returned.
 *
 * # Safety
 * `ring` must be a live handle; `dims` must hold `cap` values; `len` must be writable.
 */
enum CgStatus cg_jacobian_ring_dims(const struct CgJacobianRing *ring,
                                    size_t *dims,
                                    size_t cap,
                                    size_t *len);

/**
 * Whether the hypersurface of the ring is smooth (J contains every form of degree N + 1).
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum CgStatus cg_jacobian_ring_is_smooth(const struct CgJacobianRing *ring, bool *out);

/**
 * # Safety
 * `ring` must be null or a handle from this library not yet freed.
 */
void cg_jacobian_ring_free(struct CgJacobianRing *ring);

/**
 * Discriminant quintic and conic of a cubic in x0..x4 containing x1 = x2 = x4 = 0.
 *
 * # Safety
 * `cubic` must be a live handle; both out-pointers must be writable.
 */
enum CgStatus cg_discriminant(const struct CgPolynomial *cubic,
                              struct CgPolynomial **out_quintic,
                              struct CgPolynomial **out_conic);

/**
 * Runs a verification suite and returns its JSON report through `out_json`.
 * `field` null selects the suite default; `trials` 0 selects the suite default.
 * `passed` (nullable) receives whether the suite had no failures.
 *
 * # Safety
 * `name` must be NUL-terminated; `field` null or NUL-terminated; `out_json` writable.
 */
enum CgStatus cg_run_suite(const char *name,
                           const char *field,
                           uint64_t seed,
                           size_t trials,
                           char **out_json,
                           bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBICGAUSS_H */
