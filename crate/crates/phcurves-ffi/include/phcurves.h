#ifndef PHCURVES_H
#define PHCURVES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call.
 */
typedef enum {
  PhcStatusOk = 0,
  /**
   * A required pointer argument was null.
   */
  PhcStatusNullPointer = 1,
  /**
   * Input data failed validation (non-finite, bad tangent, bad count).
   */
  PhcStatusInvalidInput = 2,
  /**
   * The data admits no interpolant (e.g. arc length below the chord).
   */
  PhcStatusInfeasible = 3,
  /**
   * A numerical step failed (no convergence, cusp, degenerate curve).
   */
  PhcStatusNumerical = 4,
} PhcStatus;

/**
 * An interpolating PH biarc; create with `phc_interpolate`, destroy with
 * `phc_biarc_free`.
 */
typedef struct PhcBiarc PhcBiarc;

/**
 * A G² spline of PH biarc spans; create with `phc_spline_build`, destroy
 * with `phc_spline_free`.
 */
typedef struct PhcSpline PhcSpline;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns a static name for a status code.
 */
const char *phc_status_name(PhcStatus status);

/**
 * Interpolates G² Hermite data with the minimum-energy PH biarc.
 *
 * Tangent directions are given as angles in radians; `length` is the
 * prescribed arc length; `lambda` must be positive; `beta0`/`beta1` are
 * the junction curvature-derivative parameters (0 for the default).
 * On success writes a new handle to `*out`.
 *
 * # Safety
 *
 * `out` must be a valid pointer to a `PhcBiarc *`.
 */
PhcStatus phc_interpolate(double p0x,
                          double p0y,
                          double p1x,
                          double p1y,
                          double theta0,
                          double theta1,
                          double k0,
                          double k1,
                          double length,
                          double lambda,
                          double beta0,
                          double beta1,
                          PhcBiarc **out);

/**
 * Frees a biarc handle; null is a no-op.
 *
 * # Safety
 *
 * `biarc` must be null or a pointer returned by `phc_interpolate` that has
 * not been freed yet.
 */
void phc_biarc_free(PhcBiarc *biarc);

/**
 * Total arc length, or NaN if the handle is null.
 *
 * # Safety
 *
 * `biarc` must be null or a live handle.
 */
double phc_biarc_arc_length(const PhcBiarc *biarc);

/**
 * Parametric bending energy of the selected candidate, or NaN if the
 * handle is null.
 *
 * # Safety
 *
 * `biarc` must be null or a live handle.
 */
double phc_biarc_energy(const PhcBiarc *biarc);

/**
 * Endpoint preimage speeds (α₀, α₁) of the selected candidate, or NaN if
 * the handle is null.
 *
 * # Safety
 *
 * `biarc` must be null or a live handle.
 */
double phc_biarc_alpha0(const PhcBiarc *biarc);

/**
 * See `phc_biarc_alpha0`.
 *
 * # Safety
 *
 * `biarc` must be null or a live handle.
 */
double phc_biarc_alpha1(const PhcBiarc *biarc);

/**
 * Evaluates point, unit tangent, and signed curvature at t ∈ [0, 1]
 * (t = 1/2 is the segment joint).
 *
 * # Safety
 *
 * `biarc` must be a live handle; `point` and `tangent` must point to
 * arrays of 2 doubles; `curvature` must point to one double.
 */
PhcStatus phc_biarc_evaluate(const PhcBiarc *biarc,
                             double t,
                             double *point,
                             double *tangent,
                             double *curvature);

/**
 * Copies the 16 Bézier control points (two degree-7 segments) as
 * interleaved x, y pairs.
 *
 * # Safety
 *
 * `biarc` must be a live handle; `out` must point to an array of 32
 * doubles.
 */
PhcStatus phc_biarc_control_points(const PhcBiarc *biarc, double *out);

/**
 * Builds a G² spline through nodes with prescribed span lengths.
 *
 * `nodes` holds 5 doubles per node: x, y, tangent x, tangent y, signed
 * curvature (tangents need not be normalized).  `lengths` holds
 * `n_nodes - 1` span arc lengths.  On success writes a new handle to
 * `*out`.
 *
 * # Safety
 *
 * `nodes` must point to `5 * n_nodes` doubles, `lengths` to
 * `n_nodes - 1` doubles, and `out` to a `PhcSpline *`.
 */
PhcStatus phc_spline_build(const double *nodes,
                           size_t n_nodes,
                           const double *lengths,
                           double lambda,
                           double beta0,
                           double beta1,
                           PhcSpline **out);

/**
 * Frees a spline handle; null is a no-op.
 *
 * # Safety
 *
 * `spline` must be null or a pointer returned by `phc_spline_build` that
 * has not been freed yet.
 */
void phc_spline_free(PhcSpline *spline);

/**
 * Number of biarc spans, or 0 if the handle is null.
 *
 * # Safety
 *
 * `spline` must be null or a live handle.
 */
size_t phc_spline_num_spans(const PhcSpline *spline);

/**
 * Sum of span arc lengths, or NaN if the handle is null.
 *
 * # Safety
 *
 * `spline` must be null or a live handle.
 */
double phc_spline_total_length(const PhcSpline *spline);

/**
 * Evaluates the spline at global parameter u ∈ [0, N] (span j covers
 * [j, j+1]).
 *
 * # Safety
 *
 * `spline` must be a live handle; `point` and `tangent` must point to
 * arrays of 2 doubles; `curvature` must point to one double.
 */
PhcStatus phc_spline_evaluate(const PhcSpline *spline,
                              double u,
                              double *point,
                              double *tangent,
                              double *curvature);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHCURVES_H */
