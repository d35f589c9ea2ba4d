#ifndef G2LAB_H
#define G2LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum G2labStatus {
  G2LAB_STATUS_OK = 0,
  G2LAB_STATUS_NULL_POINTER = 1,
  G2LAB_STATUS_INVALID_ARGUMENT = 2,
  G2LAB_STATUS_DIMENSION_MISMATCH = 3,
  G2LAB_STATUS_NOT_UNIT = 4,
  G2LAB_STATUS_NOT_TANGENT = 5,
  G2LAB_STATUS_CONSTRUCTION_FAILED = 6,
  G2LAB_STATUS_SERIALIZATION = 7,
  G2LAB_STATUS_PANIC = 99,
} G2labStatus;

typedef enum G2labJacobiRoute {
  G2LAB_JACOBI_ROUTE_CLOSED = 0,
  G2LAB_JACOBI_ROUTE_DIRECT = 1,
} G2labJacobiRoute;

typedef enum G2labVerdict {
  G2LAB_VERDICT_CONSISTENT = 0,
  G2LAB_VERDICT_DEVIATION_FOUND = 1,
} G2labVerdict;

/**
 * Opaque hypersurface frame handle.
 */
typedef struct G2labFrame G2labFrame;

/**
 * Opaque ambient model handle.
 */
typedef struct G2labModel G2labModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next g2lab call on the same thread.
 */
const char *g2lab_last_error(void);

/**
 * Builds the model of quaternionic dimension `m` (real dimension `4m`).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum G2labStatus g2lab_model_new(size_t m, struct G2labModel **out);

/**
 * # Safety
 * `model` must come from `g2lab_model_new` and not be used afterwards. NULL is ignored.
 */
void g2lab_model_free(struct G2labModel *model);

/**
 * Real dimension `4m`, or 0 for NULL.
 *
 * # Safety
 * `model` must be NULL or a live handle.
 */
size_t g2lab_model_dim(const struct G2labModel *model);

/**
 * Ambient curvature `R(X,Y)Z` into `out` (length `len`).
 *
 * # Safety
 * All pointers must reference `len` doubles; `model` must be a live handle.
 */
enum G2labStatus g2lab_curvature(const struct G2labModel *model,
                                 const double *x,
                                 const double *y,
                                 const double *z,
                                 size_t len,
                                 double *out);

/**
 * Sectional curvature of the plane spanned by an orthonormal pair.
 *
 * # Safety
 * `x`, `y` must reference `len` doubles; `out` one double.
 */
enum G2labStatus g2lab_sectional(const struct G2labModel *model,
                                 const double *x,
                                 const double *y,
                                 size_t len,
                                 double *out);

/**
 * Induced structure at the unit normal `n`. The frame keeps the model alive.
 *
 * # Safety
 * `n` must reference `len` doubles; `out` must be writable.
 */
enum G2labStatus g2lab_frame_new(const struct G2labModel *model,
                                 const double *n,
                                 size_t len,
                                 struct G2labFrame **out);

/**
 * # Safety
 * `frame` must come from `g2lab_frame_new` and not be used afterwards. NULL is ignored.
 */
void g2lab_frame_free(struct G2labFrame *frame);

/**
 * Reeb vector `xi = -JN` into `out` (model dimension).
 *
 * # Safety
 * `out` must reference `4m` writable doubles.
 */
enum G2labStatus g2lab_frame_reeb(const struct G2labFrame *frame, double *out);

/**
 * Normal Jacobi operator `R(X,N)N` on a tangent vector.
 *
 * # Safety
 * `x` must reference `len` doubles, `out` `len` writable doubles.
 */
enum G2labStatus g2lab_normal_jacobi(const struct G2labFrame *frame,
                                     const double *x,
                                     size_t len,
                                     enum G2labJacobiRoute route,
                                     double *out);

/**
 * Splits `xi = eta(U) U + sum eta(xi_nu) xi_nu`. Writes `eta(U)` and the
 * three `eta(xi_nu)`; `eta_u` is 0 when `xi` lies in Dperp.
 *
 * # Safety
 * `eta_u` must reference one writable double and `eta_xi` three.
 */
enum G2labStatus g2lab_reeb_decompose(const struct G2labFrame *frame,
                                      double *eta_u,
                                      double *eta_xi);

/**
 * Runs a scenario described by a JSON request such as
 * `{"scenario": "type-a", "m": 3, "r": 0.3, "seed": 42}` and returns the JSON
 * report in `out_json` (release with `g2lab_string_free`). `verdict` may be NULL.
 *
 * # Safety
 * `request_json` must be a NUL-terminated string; `out_json` writable.
 */
enum G2labStatus g2lab_run_scenario(const char *request_json,
                                    char **out_json,
                                    enum G2labVerdict *verdict);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void g2lab_string_free(char *s);

/**
 * ABI version of this interface.
 */
int g2lab_abi_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* G2LAB_H */
