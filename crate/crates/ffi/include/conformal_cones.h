#ifndef CONFORMAL_CONES_H
#define CONFORMAL_CONES_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_ARGUMENT = 2,
  CC_STATUS_DOMAIN = 3,
  CC_STATUS_UNSUPPORTED = 4,
  CC_STATUS_NUMERICAL = 5,
  CC_STATUS_PANIC = 6,
} CcStatus;

typedef enum CcExtremal {
  CC_EXTREMAL_LARGEST = 0,
  CC_EXTREMAL_SMALLEST = 1,
} CcExtremal;

typedef enum CcRegion {
  CC_REGION_INTERIOR = 0,
  CC_REGION_BOUNDARY = 1,
  CC_REGION_EXTERIOR = 2,
} CcRegion;

typedef enum CcRegularity {
  CC_REGULARITY_SMOOTH = 0,
  CC_REGULARITY_LIPSCHITZ_KINK = 1,
  CC_REGULARITY_UNSOLVABLE = 2,
} CcRegularity;

typedef enum CcExistence {
  CC_EXISTENCE_GLOBAL = 0,
  CC_EXISTENCE_FINITE_TIME = 1,
} CcExistence;

/**
 * A symmetric cone in ℝⁿ.
 */
typedef struct CcCone CcCone;

/**
 * Outcome of a radial Dirichlet problem on an annulus.
 */
typedef struct CcDirichlet CcDirichlet;

/**
 * A sampled trajectory of the reduced ODE.
 */
typedef struct CcTrajectory CcTrajectory;

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *cc_last_error(void);

/**
 * Static, NUL-terminated version string.
 */
const char *cc_version(void);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CcStatus cc_cone_gamma_k(size_t n, size_t k, struct CcCone **out);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CcStatus cc_cone_neg_dual_gamma_k(size_t n, size_t k, struct CcCone **out);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CcStatus cc_cone_circular(size_t n, double c, struct CcCone **out);

/**
 * Weights apply to λ sorted in descending order.
 *
 * # Safety
 * `weights` must point to `n` readable doubles; `out` must be valid for a pointer write.
 */
enum CcStatus cc_cone_ordered_linear(const double *weights, size_t n, struct CcCone **out);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CcStatus cc_cone_extremal(double mu, enum CcExtremal which, size_t n, struct CcCone **out);

/**
 * `ℝⁿ ∖ (−Γ̄)` as a new handle.
 *
 * # Safety
 * `cone` must be a live handle; `out` must be valid for a pointer write.
 */
enum CcStatus cc_cone_negation_dual(const struct CcCone *cone, struct CcCone **out);

/**
 * # Safety
 * `cone` must be null or a handle not yet freed.
 */
void cc_cone_free(struct CcCone *cone);

/**
 * # Safety
 * `cone` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_cone_dim(const struct CcCone *cone, size_t *out);

/**
 * `μ⁺`; an infinite value is reported as `INFINITY`.
 *
 * # Safety
 * `cone` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_cone_mu_plus(const struct CcCone *cone, double *out);

/**
 * `μ⁻`; an infinite value is reported as `INFINITY`.
 *
 * # Safety
 * `cone` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_cone_mu_minus(const struct CcCone *cone, double *out);

/**
 * Classifies `lambda` (any order) against the cone with boundary band `tol`.
 * `margin` may be null.
 *
 * # Safety
 * `cone` must be a live handle, `lambda` must point to `len` doubles and
 * `region` must be valid for a write.
 */
enum CcStatus cc_cone_classify(const struct CcCone *cone,
                               const double *lambda,
                               size_t len,
                               double tol,
                               enum CcRegion *region,
                               double *margin);

/**
 * Radial `λ(A[v]) ∈ ∂Γ` on `a < r < b` with `v(a) = alpha`, `v(b) = beta`.
 * An unsolvable problem still yields a handle; query its regularity.
 *
 * # Safety
 * `cone` must be a live handle; `out` must be valid for a pointer write.
 */
enum CcStatus cc_dirichlet_solve(const struct CcCone *cone,
                                 double a,
                                 double b,
                                 double alpha,
                                 double beta,
                                 struct CcDirichlet **out);

/**
 * # Safety
 * `sol` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_dirichlet_regularity(const struct CcDirichlet *sol, enum CcRegularity *out);

/**
 * `v(r)`. Fails with `Unsupported` when the problem has no solution.
 *
 * # Safety
 * `sol` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_dirichlet_value(const struct CcDirichlet *sol, double r, double *out);

/**
 * # Safety
 * `sol` must be null or a handle not yet freed.
 */
void cc_dirichlet_free(struct CcDirichlet *sol);

/**
 * Closed-form prediction for `φ″ = γ e^{2φ}`-type data `(γ, v₀, w₀)`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum CcStatus cc_ode_existence(double gamma, double v0, double w0, enum CcExistence *out);

/**
 * Integrates the phase system on `[-window, window]`, stopping either side
 * once `|φ| + |w|` exceeds `threshold`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CcStatus cc_ode_integrate(double gamma,
                               double v0,
                               double w0,
                               double window,
                               double threshold,
                               struct CcTrajectory **out);

/**
 * # Safety
 * `tr` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_ode_len(const struct CcTrajectory *tr, size_t *out);

/**
 * Sample `index` in increasing `t`. Any of the out-pointers may be null.
 *
 * # Safety
 * `tr` must be a live handle; non-null out-pointers must be valid for a write.
 */
enum CcStatus cc_ode_sample(const struct CcTrajectory *tr,
                            size_t index,
                            double *t,
                            double *phi,
                            double *w);

/**
 * Largest relative drift of the first integral along the trajectory.
 *
 * # Safety
 * `tr` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_ode_drift(const struct CcTrajectory *tr, double *out);

/**
 * Existence as observed by the integration.
 *
 * # Safety
 * `tr` must be a live handle; `out` must be valid for a write.
 */
enum CcStatus cc_ode_observed(const struct CcTrajectory *tr, enum CcExistence *out);

/**
 * # Safety
 * `tr` must be null or a handle not yet freed.
 */
void cc_ode_free(struct CcTrajectory *tr);

/**
 * Ricci eigenvalues from Schouten eigenvalues, written in descending order.
 *
 * # Safety
 * `lambda` must point to `n` readable doubles and `out` to `n` writable ones.
 */
enum CcStatus cc_schouten_to_ricci(const double *lambda, size_t n, double *out);

/**
 * Inverse of [`cc_schouten_to_ricci`].
 *
 * # Safety
 * `ricci` must point to `n` readable doubles and `out` to `n` writable ones.
 */
enum CcStatus cc_ricci_to_schouten(const double *ricci, size_t n, double *out);

/**
 * Constant of the `−σ_{1/2}` gradient blow-up family in dimension `n`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum CcStatus cc_sigma_half_constant(size_t n, double *out);

#endif  /* CONFORMAL_CONES_H */
