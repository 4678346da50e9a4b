//! C ABI for the phcurves library.
//!
//! Handles are opaque pointers created and destroyed here; every function
//! that can fail returns a `PhcStatus`.  All pointers must either be null
//! (reported as `PHC_STATUS_NULL_POINTER`) or valid for the access the
//! function documents.

use std::ffi::c_char;

use phcurves::biarc::interpolate;
use phcurves::cpoly::Complex;
use phcurves::error::Error;
use phcurves::spline::{G2Spline, SplineNode};
use phcurves::PHBiarc;

/// Result of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhcStatus {
    PhcStatusOk = 0,
    /// A required pointer argument was null.
    PhcStatusNullPointer = 1,
    /// Input data failed validation (non-finite, bad tangent, bad count).
    PhcStatusInvalidInput = 2,
    /// The data admits no interpolant (e.g. arc length below the chord).
    PhcStatusInfeasible = 3,
    /// A numerical step failed (no convergence, cusp, degenerate curve).
    PhcStatusNumerical = 4,
}

fn status_of(err: &Error) -> PhcStatus {
    match err {
        Error::InvalidInput { .. } | Error::Parse { .. } | Error::Io(_) => {
            PhcStatus::PhcStatusInvalidInput
        }
        Error::Infeasible { .. } | Error::DegeneratePreimage => PhcStatus::PhcStatusInfeasible,
        Error::Span { source, .. } => status_of(source),
        _ => PhcStatus::PhcStatusNumerical,
    }
}

/// An interpolating PH biarc; create with `phc_interpolate`, destroy with
/// `phc_biarc_free`.
pub struct PhcBiarc {
    inner: PHBiarc<f64>,
}

/// A G² spline of PH biarc spans; create with `phc_spline_build`, destroy
/// with `phc_spline_free`.
pub struct PhcSpline {
    inner: G2Spline,
}

/// Returns a static name for a status code.
#[no_mangle]
pub extern "C" fn phc_status_name(status: PhcStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        PhcStatus::PhcStatusOk => b"ok\0",
        PhcStatus::PhcStatusNullPointer => b"null pointer\0",
        PhcStatus::PhcStatusInvalidInput => b"invalid input\0",
        PhcStatus::PhcStatusInfeasible => b"infeasible\0",
        PhcStatus::PhcStatusNumerical => b"numerical failure\0",
    };
    name.as_ptr().cast()
}

/// Interpolates G² Hermite data with the minimum-energy PH biarc.
///
/// Tangent directions are given as angles in radians; `length` is the
/// prescribed arc length; `lambda` must be positive; `beta0`/`beta1` are
/// the junction curvature-derivative parameters (0 for the default).
/// On success writes a new handle to `*out`.
///
/// # Safety
///
/// `out` must be a valid pointer to a `PhcBiarc *`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn phc_interpolate(
    p0x: f64,
    p0y: f64,
    p1x: f64,
    p1y: f64,
    theta0: f64,
    theta1: f64,
    k0: f64,
    k1: f64,
    length: f64,
    lambda: f64,
    beta0: f64,
    beta1: f64,
    out: *mut *mut PhcBiarc,
) -> PhcStatus {
    if out.is_null() {
        return PhcStatus::PhcStatusNullPointer;
    }
    let data = match phcurves::HermiteData::new(
        Complex::new(p0x, p0y),
        Complex::new(p1x, p1y),
        Complex::new(theta0.cos(), theta0.sin()),
        Complex::new(theta1.cos(), theta1.sin()),
        k0,
        k1,
        length,
    ) {
        Ok(d) => d,
        Err(e) => return status_of(&e),
    };
    match interpolate(&data, lambda, beta0, beta1) {
        Ok(interp) => match interp.best() {
            Some(best) => {
                *out = Box::into_raw(Box::new(PhcBiarc {
                    inner: best.clone(),
                }));
                PhcStatus::PhcStatusOk
            }
            None => PhcStatus::PhcStatusInfeasible,
        },
        Err(e) => status_of(&e),
    }
}

/// Frees a biarc handle; null is a no-op.
///
/// # Safety
///
/// `biarc` must be null or a pointer returned by `phc_interpolate` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn phc_biarc_free(biarc: *mut PhcBiarc) {
    if !biarc.is_null() {
        drop(Box::from_raw(biarc));
    }
}

/// Total arc length, or NaN if the handle is null.
///
/// # Safety
///
/// `biarc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn phc_biarc_arc_length(biarc: *const PhcBiarc) -> f64 {
    biarc.as_ref().map_or(f64::NAN, |b| b.inner.arc_length())
}

/// Parametric bending energy of the selected candidate, or NaN if the
/// handle is null.
///
/// # Safety
///
/// `biarc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn phc_biarc_energy(biarc: *const PhcBiarc) -> f64 {
    biarc.as_ref().map_or(f64::NAN, |b| b.inner.energy())
}

/// Endpoint preimage speeds (α₀, α₁) of the selected candidate, or NaN if
/// the handle is null.
///
/// # Safety
///
/// `biarc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn phc_biarc_alpha0(biarc: *const PhcBiarc) -> f64 {
    biarc.as_ref().map_or(f64::NAN, |b| b.inner.alpha0())
}

/// See `phc_biarc_alpha0`.
///
/// # Safety
///
/// `biarc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn phc_biarc_alpha1(biarc: *const PhcBiarc) -> f64 {
    biarc.as_ref().map_or(f64::NAN, |b| b.inner.alpha1())
}

/// Evaluates point, unit tangent, and signed curvature at t ∈ [0, 1]
/// (t = 1/2 is the segment joint).
///
/// # Safety
///
/// `biarc` must be a live handle; `point` and `tangent` must point to
/// arrays of 2 doubles; `curvature` must point to one double.
#[no_mangle]
pub unsafe extern "C" fn phc_biarc_evaluate(
    biarc: *const PhcBiarc,
    t: f64,
    point: *mut f64,
    tangent: *mut f64,
    curvature: *mut f64,
) -> PhcStatus {
    let Some(b) = biarc.as_ref() else {
        return PhcStatus::PhcStatusNullPointer;
    };
    if point.is_null() || tangent.is_null() || curvature.is_null() {
        return PhcStatus::PhcStatusNullPointer;
    }
    match b.inner.evaluate(t) {
        Ok(s) => {
            *point = s.point.re;
            *point.add(1) = s.point.im;
            *tangent = s.unit_tangent.re;
            *tangent.add(1) = s.unit_tangent.im;
            *curvature = s.signed_curvature;
            PhcStatus::PhcStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Copies the 16 Bézier control points (two degree-7 segments) as
/// interleaved x, y pairs.
///
/// # Safety
///
/// `biarc` must be a live handle; `out` must point to an array of 32
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn phc_biarc_control_points(
    biarc: *const PhcBiarc,
    out: *mut f64,
) -> PhcStatus {
    let Some(b) = biarc.as_ref() else {
        return PhcStatus::PhcStatusNullPointer;
    };
    if out.is_null() {
        return PhcStatus::PhcStatusNullPointer;
    }
    let halves = [b.inner.half_a(), b.inner.half_b()];
    let mut k = 0;
    for half in halves {
        for p in half.control_points() {
            *out.add(k) = p.re;
            *out.add(k + 1) = p.im;
            k += 2;
        }
    }
    PhcStatus::PhcStatusOk
}

/// Builds a G² spline through nodes with prescribed span lengths.
///
/// `nodes` holds 5 doubles per node: x, y, tangent x, tangent y, signed
/// curvature (tangents need not be normalized).  `lengths` holds
/// `n_nodes - 1` span arc lengths.  On success writes a new handle to
/// `*out`.
///
/// # Safety
///
/// `nodes` must point to `5 * n_nodes` doubles, `lengths` to
/// `n_nodes - 1` doubles, and `out` to a `PhcSpline *`.
#[no_mangle]
pub unsafe extern "C" fn phc_spline_build(
    nodes: *const f64,
    n_nodes: usize,
    lengths: *const f64,
    lambda: f64,
    beta0: f64,
    beta1: f64,
    out: *mut *mut PhcSpline,
) -> PhcStatus {
    if nodes.is_null() || lengths.is_null() || out.is_null() {
        return PhcStatus::PhcStatusNullPointer;
    }
    if n_nodes < 2 {
        return PhcStatus::PhcStatusInvalidInput;
    }
    let raw = std::slice::from_raw_parts(nodes, 5 * n_nodes);
    let mut parsed = Vec::with_capacity(n_nodes);
    for chunk in raw.chunks_exact(5) {
        let tangent = Complex::new(chunk[2], chunk[3]);
        let norm = tangent.abs();
        if !(norm > 0.0) {
            return PhcStatus::PhcStatusInvalidInput;
        }
        match SplineNode::new(Complex::new(chunk[0], chunk[1]), tangent / norm, chunk[4]) {
            Ok(node) => parsed.push(node),
            Err(e) => return status_of(&e),
        }
    }
    let lens = std::slice::from_raw_parts(lengths, n_nodes - 1);
    match G2Spline::build(&parsed, lens, lambda, beta0, beta1) {
        Ok(spline) => {
            *out = Box::into_raw(Box::new(PhcSpline { inner: spline }));
            PhcStatus::PhcStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Frees a spline handle; null is a no-op.
///
/// # Safety
///
/// `spline` must be null or a pointer returned by `phc_spline_build` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn phc_spline_free(spline: *mut PhcSpline) {
    if !spline.is_null() {
        drop(Box::from_raw(spline));
    }
}

/// Number of biarc spans, or 0 if the handle is null.
///
/// # Safety
///
/// `spline` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn phc_spline_num_spans(spline: *const PhcSpline) -> usize {
    spline.as_ref().map_or(0, |s| s.inner.num_spans())
}

/// Sum of span arc lengths, or NaN if the handle is null.
///
/// # Safety
///
/// `spline` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn phc_spline_total_length(spline: *const PhcSpline) -> f64 {
    spline.as_ref().map_or(f64::NAN, |s| s.inner.total_length())
}

/// Evaluates the spline at global parameter u ∈ [0, N] (span j covers
/// [j, j+1]).
///
/// # Safety
///
/// `spline` must be a live handle; `point` and `tangent` must point to
/// arrays of 2 doubles; `curvature` must point to one double.
#[no_mangle]
pub unsafe extern "C" fn phc_spline_evaluate(
    spline: *const PhcSpline,
    u: f64,
    point: *mut f64,
    tangent: *mut f64,
    curvature: *mut f64,
) -> PhcStatus {
    let Some(s) = spline.as_ref() else {
        return PhcStatus::PhcStatusNullPointer;
    };
    if point.is_null() || tangent.is_null() || curvature.is_null() {
        return PhcStatus::PhcStatusNullPointer;
    }
    match s.inner.evaluate_global(u) {
        Ok(sample) => {
            *point = sample.point.re;
            *point.add(1) = sample.point.im;
            *tangent = sample.unit_tangent.re;
            *tangent.add(1) = sample.unit_tangent.im;
            *curvature = sample.signed_curvature;
            PhcStatus::PhcStatusOk
        }
        Err(e) => status_of(&e),
    }
}
