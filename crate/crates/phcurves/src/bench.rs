//! Experimental harness: analytic test curves, the parametric-distance
//! error with its quintic reparameterization, decay tables, the circle
//! study, and energy optimization over the free parameters.
//!
//! Error values decay like h⁵/h⁶ and drop far below f64 resolution within a
//! few halvings, so the table pipeline solves in f64, polishes the solution
//! in double-double arithmetic, and evaluates the error metric entirely in
//! `Dd`.

use crate::biarc::{interpolate, refine_alpha, FreeParams, HermiteData, PHBiarc};
use crate::cpoly::Complex;
use crate::error::{Error, Result};
use crate::phcurve::PHSegment7;
use crate::real::{Dd, Real};
use crate::singleph::{refine_single, single_preimage, SinglePHProblem};
use crate::spline::{G2Spline, SplineNode};

/// The logarithmic spiral family f(s) = −e^{ωs}cos s + i·e^{ωs}sin s;
/// ω = 0 degenerates to the clockwise unit circle started at (−1, 0).
#[derive(Clone, Copy, Debug)]
pub struct AnalyticCurve<T = f64> {
    pub omega: T,
}

impl<T: Real> AnalyticCurve<T> {
    pub fn new(omega: T) -> Self {
        AnalyticCurve { omega }
    }

    /// Position f(s) = −e^{(ω−i)s}.
    pub fn f(&self, s: T) -> Complex<T> {
        let growth = (self.omega * s).exp();
        let (sin_s, cos_s) = s.sin_cos();
        Complex::new(-growth * cos_s, growth * sin_s)
    }

    /// Derivative f′(s) = (ω − i)·f(s).
    pub fn fp(&self, s: T) -> Complex<T> {
        Complex::new(self.omega, -T::ONE) * self.f(s)
    }

    /// Second derivative f″(s) = (ω − i)²·f(s).
    pub fn fpp(&self, s: T) -> Complex<T> {
        let m = Complex::new(self.omega, -T::ONE);
        m * m * self.f(s)
    }

    /// Signed curvature κ_f(s) = −e^{−sω}/√(1+ω²).
    pub fn kappa(&self, s: T) -> T {
        -(-(s * self.omega)).exp() / (T::ONE + self.omega * self.omega).sqrt()
    }

    /// Arc length from s_i to s_f; the ω → 0 limit √(1+ω²)(s_f − s_i) is
    /// taken through a series branch because the closed form divides by ω.
    pub fn arc_length(&self, si: T, sf: T) -> T {
        let g = (T::ONE + self.omega * self.omega).sqrt();
        let scale = g * (si * self.omega).exp();
        let z = (sf - si) * self.omega;
        if self.omega.abs().to_f64() < 1e-8 {
            let half = T::from_f64(0.5);
            let sixth = T::ONE / T::from_i32(6);
            scale * (sf - si) * (T::ONE + z * half + z * z * sixth)
        } else {
            scale * z.exp_m1() / self.omega
        }
    }
}

/// G² Hermite data read off the analytic curve on [s0, s1], with the exact
/// arc length.
pub fn sample_hermite<T: Real>(
    curve: &AnalyticCurve<T>,
    s0: T,
    s1: T,
) -> Result<HermiteData<T>> {
    if !(s0.to_f64() < s1.to_f64()) {
        return Err(Error::InvalidInput {
            reason: format!("need s0 < s1, got [{}, {}]", s0.to_f64(), s1.to_f64()),
        });
    }
    let tp0 = curve.fp(s0);
    let tp1 = curve.fp(s1);
    HermiteData::new(
        curve.f(s0),
        curve.f(s1),
        tp0 / tp0.abs(),
        tp1 / tp1.abs(),
        curve.kappa(s0),
        curve.kappa(s1),
        curve.arc_length(s0, s1),
    )
}

/// An interpolant viewed as one curve over the global parameter t ∈ [0, 1],
/// with the derivatives the error metric needs.
pub enum FittedCurve<'a, T: Real> {
    Biarc(&'a PHBiarc<T>),
    Single(&'a PHSegment7<T>),
}

impl<T: Real> FittedCurve<'_, T> {
    pub fn r(&self, t: T) -> Complex<T> {
        match self {
            FittedCurve::Biarc(b) => b.point(t).expect("t in [0,1]"),
            FittedCurve::Single(s) => s.point(t).expect("t in [0,1]"),
        }
    }

    pub fn rp(&self, t: T) -> Complex<T> {
        match self {
            FittedCurve::Biarc(b) => b.derivative1(t).expect("t in [0,1]"),
            FittedCurve::Single(s) => s.derivative1(t).expect("t in [0,1]"),
        }
    }

    pub fn rpp(&self, t: T) -> Complex<T> {
        match self {
            FittedCurve::Biarc(b) => b.derivative2(t).expect("t in [0,1]"),
            FittedCurve::Single(s) => s.derivative2(t).expect("t in [0,1]"),
        }
    }
}

/// Quintic reparameterization t ↦ φ(t) in Bézier form.
#[derive(Clone, Copy, Debug)]
pub struct QuinticPhi<T = f64> {
    pub coeffs: [T; 6],
}

impl<T: Real> QuinticPhi<T> {
    pub fn eval(&self, t: T) -> T {
        let mut b = self.coeffs;
        for level in (1..6).rev() {
            for i in 0..level {
                b[i] = b[i] + (b[i + 1] - b[i]) * t;
            }
        }
        b[0]
    }

    pub fn eval_prime(&self, t: T) -> T {
        let five = T::from_i32(5);
        let mut d = [T::ZERO; 5];
        for i in 0..5 {
            d[i] = (self.coeffs[i + 1] - self.coeffs[i]) * five;
        }
        for level in (1..5).rev() {
            for i in 0..level {
                d[i] = d[i] + (d[i + 1] - d[i]) * t;
            }
        }
        d[0]
    }
}

/// Assembles the quintic from endpoint values a, b, first derivatives
/// p₀, p₁ and second derivatives q₀, q₁.  Matching first and second
/// derivatives with q ≡ 0 and p₀ = p₁ = b − a reproduces the affine map.
pub fn quintic_from_endpoint_data<T: Real>(a: T, b: T, p0: T, q0: T, p1: T, q1: T) -> QuinticPhi<T> {
    let five = T::from_i32(5);
    let twenty = T::from_i32(20);
    let two = T::from_i32(2);
    let b0 = a;
    let b1 = a + p0 / five;
    let b2 = q0 / twenty + two * b1 - b0;
    let b5 = b;
    let b4 = b - p1 / five;
    let b3 = q1 / twenty + two * b4 - b5;
    QuinticPhi {
        coeffs: [b0, b1, b2, b3, b4, b5],
    }
}

/// Builds the quintic reparameterization for an interpolant of data sampled
/// from `curve` on [a, b]: φ(j) hits the interval ends, φ′(j) matches the
/// speed ratio, and φ″(j) is the tangential component of the chain rule.
/// The normal component vanishes when the G² data matches; it is checked to
/// 1e-9 rather than silently discarded, and φ′ > 0 is verified by sampling.
pub fn reparam_phi<T: Real>(
    rc: &FittedCurve<T>,
    curve: &AnalyticCurve<T>,
    a: T,
    b: T,
) -> Result<QuinticPhi<T>> {
    let mut ends = [(T::ZERO, T::ZERO); 2];
    for (j, s) in [(0usize, a), (1usize, b)] {
        let fp = curve.fp(s);
        let fpp = curve.fpp(s);
        let t = T::from_i32(j as i32);
        let rp = rc.rp(t);
        let rpp = rc.rpp(t);
        let p = rp.abs() / fp.abs();
        let num = (rpp - fpp * (p * p)) * fp.conj();
        let q = num.re / fp.norm_sqr();
        let normal_residual = num.im / fp.norm_sqr();
        if normal_residual.abs().to_f64() > 1e-9 {
            return Err(Error::InvalidInput {
                reason: format!(
                    "chain-rule normal residual {:.3e} at endpoint {} (expected 0 for G² data)",
                    normal_residual.to_f64(),
                    j
                ),
            });
        }
        ends[j] = (p, q);
    }
    let phi = quintic_from_endpoint_data(a, b, ends[0].0, ends[0].1, ends[1].0, ends[1].1);
    for k in 0..=1024 {
        let t = T::from_f64(k as f64 / 1024.0);
        if phi.eval_prime(t).to_f64() <= 0.0 {
            return Err(Error::NoConvergence {
                reason: format!(
                    "reparameterization not monotone at t = {} (error metric invalid at this step)",
                    k as f64 / 1024.0
                ),
            });
        }
    }
    Ok(phi)
}

/// Parametric distance bound max_t |r(t) − f(φ(t))|: 4096 uniform samples
/// plus golden-section refinement around the discrete maximum.
pub fn e_err<T: Real>(rc: &FittedCurve<T>, curve: &AnalyticCurve<T>, phi: &QuinticPhi<T>) -> T {
    const N: usize = 4096;
    let dist = |t: T| (rc.r(t) - curve.f(phi.eval(t))).abs();

    let mut best_i = 0usize;
    let mut best = T::ZERO;
    for i in 0..=N {
        let d = dist(T::from_f64(i as f64 / N as f64));
        if d > best {
            best = d;
            best_i = i;
        }
    }
    let mut lo = T::from_f64(best_i.saturating_sub(1) as f64 / N as f64);
    let mut hi = T::from_f64(best_i.min(N - 1).wrapping_add(1) as f64 / N as f64);
    let g = T::from_f64((5.0_f64.sqrt() - 1.0) / 2.0);
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let mut fc = dist(c);
    let mut fd = dist(d);
    for _ in 0..80 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = dist(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = dist(d);
        }
        if (hi - lo).to_f64() < 1e-12 {
            break;
        }
    }
    best.max(fc).max(fd)
}

/// Fits the minimum-energy biarc to data sampled on [s0, s1], solving in
/// f64 and polishing the length-equation root in `T`.
pub fn fit_biarc<T: Real>(curve: &AnalyticCurve<T>, s0: T, s1: T) -> Result<PHBiarc<T>> {
    let curve64 = AnalyticCurve::new(curve.omega.to_f64());
    let data64 = sample_hermite(&curve64, s0.to_f64(), s1.to_f64())?;
    let interp = interpolate(&data64, 1.0, 0.0, 0.0)?;
    let best = interp.best().ok_or_else(|| Error::NoConvergence {
        reason: "no biarc candidate for sampled data".into(),
    })?;

    let data_t = sample_hermite(curve, s0, s1)?;
    let branch = best.params().branch;
    let root = refine_alpha(
        &data_t,
        T::ONE,
        T::ZERO,
        T::ZERO,
        branch,
        T::from_f64(best.alpha0().abs()),
        T::from_f64(1e-13),
        4,
    );
    let sign0 = T::from_f64(best.alpha0().signum());
    let sign1 = T::from_f64(best.alpha1().signum());
    PHBiarc::construct(
        &data_t,
        sign0 * root,
        sign1 * root,
        FreeParams::with_branch(1.0, 0.0, 0.0, branch),
    )
}

/// Fits the minimum-energy single-curve interpolant (λ = 1) to data sampled
/// on [s0, s1], solving in f64 and polishing the triple (α₀, β₀, β₁) in `T`.
pub fn fit_single<T: Real>(curve: &AnalyticCurve<T>, s0: T, s1: T) -> Result<PHSegment7<T>> {
    let curve64 = AnalyticCurve::new(curve.omega.to_f64());
    let data64 = sample_hermite(&curve64, s0.to_f64(), s1.to_f64())?;
    let prob = SinglePHProblem::new(data64, 1.0)?;
    let sols = crate::singleph::solve(&prob);
    let best = sols
        .iter()
        .min_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap())
        .ok_or_else(|| Error::NoConvergence {
            reason: "no single-curve interpolant for sampled data".into(),
        })?;

    let data_t = sample_hermite(curve, s0, s1)?;
    let seed = [
        T::from_f64(best.alpha0),
        T::from_f64(best.beta0),
        T::from_f64(best.beta1),
    ];
    // Short spans leave the f64 seed with β accurate to only ~1e-6 and the
    // system ill-conditioned, so give the polish a generous budget; extra
    // iterations are cheap next to the error evaluation that follows.
    let [a0, b0, b1] = refine_single(
        &data_t,
        T::ONE,
        best.branch,
        seed,
        T::from_f64(1e-13),
        40,
    );
    let a1 = T::from_f64(best.branch.sign()) * a0;
    let pre = single_preimage(&data_t, a0, a1, b0, b1)?;
    PHSegment7::new(pre, data_t.p0, T::ONE)
}

/// Which interpolant a decay table evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Biarc,
    Single,
}

/// One row of an error table.
#[derive(Clone, Copy, Debug)]
pub struct ErrorReport {
    pub h: f64,
    pub e_err: f64,
    /// log₂ of the ratio to the previous row's error; absent on the first row.
    pub decay_exponent: Option<f64>,
}

/// Errors of the interpolant to the spiral on [0, h] for each h, with decay
/// exponents between consecutive rows.  `h_list` must be descending.
/// Internally solves in f64 and evaluates the error in double-double.
pub fn decay_table(omega: f64, h_list: &[f64], method: Method) -> Result<Vec<ErrorReport>> {
    for w in h_list.windows(2) {
        if !(w[0] > w[1]) {
            return Err(Error::InvalidInput {
                reason: "h list must be strictly descending".into(),
            });
        }
    }
    let curve = AnalyticCurve::new(Dd::from_f64(omega));
    let mut rows: Vec<ErrorReport> = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let s1 = Dd::from_f64(h);
        let err = match method {
            Method::Biarc => {
                let b = fit_biarc(&curve, Dd::ZERO, s1)?;
                let phi = reparam_phi(&FittedCurve::Biarc(&b), &curve, Dd::ZERO, s1)?;
                e_err(&FittedCurve::Biarc(&b), &curve, &phi)
            }
            Method::Single => {
                let s = fit_single(&curve, Dd::ZERO, s1)?;
                let phi = reparam_phi(&FittedCurve::Single(&s), &curve, Dd::ZERO, s1)?;
                e_err(&FittedCurve::Single(&s), &curve, &phi)
            }
        }
        .to_f64();
        let decay_exponent = rows.last().map(|p| (p.e_err / err).log2());
        rows.push(ErrorReport {
            h,
            e_err: err,
            decay_exponent,
        });
    }
    Ok(rows)
}

/// Result of a λ optimization.
#[derive(Clone, Debug)]
pub struct LambdaOpt {
    pub lambda: f64,
    pub energy: f64,
    pub biarc: PHBiarc<f64>,
}

/// Selected-candidate energy at the given λ (β = 0), if any candidate
/// solves the length equation with finite energy.
pub fn energy_at_lambda(data: &HermiteData<f64>, lambda: f64) -> Option<(f64, PHBiarc<f64>)> {
    let interp = interpolate(data, lambda, 0.0, 0.0).ok()?;
    let best = interp.best()?;
    if best.energy().is_finite() {
        Some((best.energy(), best.clone()))
    } else {
        None
    }
}

/// Minimizes the selected energy over λ at β = 0.  Grid mode scans
/// λ ∈ {j/10 : j = 1..100}; continuous mode refines around the grid minimum
/// by golden section to |Δλ| ≤ 1e-6.
pub fn optimize_lambda(data: &HermiteData<f64>, continuous: bool) -> Result<LambdaOpt> {
    let mut best: Option<LambdaOpt> = None;
    for j in 1..=100 {
        let lambda = j as f64 / 10.0;
        if let Some((energy, biarc)) = energy_at_lambda(data, lambda) {
            if best.as_ref().is_none_or(|b| energy < b.energy) {
                best = Some(LambdaOpt {
                    lambda,
                    energy,
                    biarc,
                });
            }
        }
    }
    let grid_best = best.ok_or_else(|| Error::NoConvergence {
        reason: "no feasible lambda on the grid".into(),
    })?;
    if !continuous {
        return Ok(grid_best);
    }

    let mut lo = (grid_best.lambda - 0.1).max(1e-3);
    let mut hi = grid_best.lambda + 0.1;
    let g = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let mut fc = energy_at_lambda(data, c).map(|p| p.0).unwrap_or(f64::INFINITY);
    let mut fd = energy_at_lambda(data, d).map(|p| p.0).unwrap_or(f64::INFINITY);
    while hi - lo > 1e-6 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = energy_at_lambda(data, c).map(|p| p.0).unwrap_or(f64::INFINITY);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = energy_at_lambda(data, d).map(|p| p.0).unwrap_or(f64::INFINITY);
        }
    }
    let lambda = 0.5 * (lo + hi);
    let (energy, biarc) = energy_at_lambda(data, lambda).ok_or_else(|| Error::NoConvergence {
        reason: "refined lambda infeasible".into(),
    })?;
    if energy <= grid_best.energy {
        Ok(LambdaOpt {
            lambda,
            energy,
            biarc,
        })
    } else {
        Ok(grid_best)
    }
}

/// Result of a β optimization at fixed λ.
#[derive(Clone, Copy, Debug)]
pub struct BetaOpt {
    pub beta0: f64,
    pub beta1: f64,
    pub energy: f64,
}

/// Minimizes the selected energy over (β₀, β₁) at fixed λ by Nelder–Mead
/// from (0, 0) with a 500-evaluation cap.  Points where the length equation
/// has no root are treated as +∞; the best feasible point seen is returned,
/// so the result is never worse than the β = 0 start.
pub fn optimize_beta(data: &HermiteData<f64>, lambda: f64) -> Result<BetaOpt> {
    let mut evals = 0usize;
    let mut tracked_best: Option<BetaOpt> = None;
    let f = |x: [f64; 2], evals: &mut usize, tracked: &mut Option<BetaOpt>| -> f64 {
        *evals += 1;
        let e = interpolate(data, lambda, x[0], x[1])
            .ok()
            .and_then(|i| i.best().map(|b| b.energy()))
            .unwrap_or(f64::INFINITY);
        if e.is_finite() && tracked.as_ref().is_none_or(|t| e < t.energy) {
            *tracked = Some(BetaOpt {
                beta0: x[0],
                beta1: x[1],
                energy: e,
            });
        }
        e
    };

    let mut simplex: [([f64; 2], f64); 3] = [
        ([0.0, 0.0], 0.0),
        ([1.0, 0.0], 0.0),
        ([0.0, 1.0], 0.0),
    ];
    for v in &mut simplex {
        v.1 = f(v.0, &mut evals, &mut tracked_best);
    }

    while evals < 500 {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let spread = {
            let d1 = (simplex[1].0[0] - simplex[0].0[0]).hypot(simplex[1].0[1] - simplex[0].0[1]);
            let d2 = (simplex[2].0[0] - simplex[0].0[0]).hypot(simplex[2].0[1] - simplex[0].0[1]);
            d1.max(d2)
        };
        if spread < 1e-8 {
            break;
        }
        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let reflect = [
            centroid[0] + (centroid[0] - worst.0[0]),
            centroid[1] + (centroid[1] - worst.0[1]),
        ];
        let fr = f(reflect, &mut evals, &mut tracked_best);
        if fr < simplex[0].1 {
            let expand = [
                centroid[0] + 2.0 * (centroid[0] - worst.0[0]),
                centroid[1] + 2.0 * (centroid[1] - worst.0[1]),
            ];
            let fe = f(expand, &mut evals, &mut tracked_best);
            simplex[2] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[1].1 {
            simplex[2] = (reflect, fr);
        } else {
            let contract = if fr < worst.1 {
                [
                    centroid[0] + 0.5 * (reflect[0] - centroid[0]),
                    centroid[1] + 0.5 * (reflect[1] - centroid[1]),
                ]
            } else {
                [
                    centroid[0] - 0.5 * (centroid[0] - worst.0[0]),
                    centroid[1] - 0.5 * (centroid[1] - worst.0[1]),
                ]
            };
            let fcont = f(contract, &mut evals, &mut tracked_best);
            if fcont < worst.1.min(fr) {
                simplex[2] = (contract, fcont);
            } else {
                for k in 1..3 {
                    let shrunk = [
                        simplex[0].0[0] + 0.5 * (simplex[k].0[0] - simplex[0].0[0]),
                        simplex[0].0[1] + 0.5 * (simplex[k].0[1] - simplex[0].0[1]),
                    ];
                    let fs = f(shrunk, &mut evals, &mut tracked_best);
                    simplex[k] = (shrunk, fs);
                }
            }
        }
    }

    tracked_best.ok_or_else(|| Error::NoConvergence {
        reason: "no feasible (beta0, beta1) found".into(),
    })
}

/// The circle study for one N: a biarc fitted to the arc of angle 2π/N and
/// its N−1 rotated copies assembled into a closed spline.
#[derive(Clone, Debug)]
pub struct CircleStudy {
    pub spline: G2Spline,
    pub report: ErrorReport,
    /// Endpoint speed of the base span's selected candidate.
    pub alpha0: f64,
}

/// Approximates the full unit circle by N rotated copies of one biarc span
/// of arc angle 2π/N.  The reported error is computed on the base span in
/// double-double precision.
pub fn circle_spline(n: usize) -> Result<CircleStudy> {
    if n < 2 {
        return Err(Error::InvalidInput {
            reason: format!("need at least 2 spans, got {n}"),
        });
    }
    let curve = AnalyticCurve::new(Dd::ZERO);
    let phi_span = Dd::PI * Dd::from_f64(2.0) / Dd::from_i32(n as i32);
    let base = fit_biarc(&curve, Dd::ZERO, phi_span)?;
    let phi = reparam_phi(&FittedCurve::Biarc(&base), &curve, Dd::ZERO, phi_span)?;
    let err = e_err(&FittedCurve::Biarc(&base), &curve, &phi).to_f64();

    // f(s + jφ) = e^{−ijφ} f(s): span j is the base rotated by −jφ about
    // the circle center (the origin).
    let base64 = base.project_f64();
    let phi64 = std::f64::consts::PI * 2.0 / n as f64;
    let spans = (0..n)
        .map(|j| base64.rotated(Complex::zero(), -(j as f64) * phi64))
        .collect();
    let spline = G2Spline::from_spans(spans)?;
    Ok(CircleStudy {
        spline,
        report: ErrorReport {
            h: phi64,
            e_err: err,
            decay_exponent: None,
        },
        alpha0: base64.alpha0(),
    })
}

/// Spline nodes and exact span lengths sampled from the spiral at the given
/// parameter values.
pub fn spiral_nodes(omega: f64, s_values: &[f64]) -> Result<(Vec<SplineNode>, Vec<f64>)> {
    if s_values.len() < 2 {
        return Err(Error::InvalidInput {
            reason: "need at least two sample parameters".into(),
        });
    }
    let curve = AnalyticCurve::new(omega);
    let mut nodes = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let tp = curve.fp(s);
        nodes.push(SplineNode::new(curve.f(s), tp / tp.abs(), curve.kappa(s))?);
    }
    let lengths = s_values
        .windows(2)
        .map(|w| curve.arc_length(w[0], w[1]))
        .collect();
    Ok((nodes, lengths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn spiral_formulas_match_closed_forms() {
        let c = AnalyticCurve::new(0.2);
        assert!((c.kappa(0.0) + 1.0 / 1.04_f64.sqrt()).abs() < 1e-15);
        let want = 1.04_f64.sqrt() / 0.2 * 0.2_f64.exp_m1();
        assert!((c.arc_length(0.0, 1.0) - want).abs() < 1e-15);
        // f′ really is the derivative of f.
        let h = 1e-6;
        let fd = (c.f(1.0 + h) - c.f(1.0 - h)) / (2.0 * h);
        assert!((fd - c.fp(1.0)).abs() < 1e-9);
        let fd2 = (c.fp(1.0 + h) - c.fp(1.0 - h)) / (2.0 * h);
        assert!((fd2 - c.fpp(1.0)).abs() < 1e-9);
    }

    #[test]
    fn circle_data_is_a_semicircle() {
        let c = AnalyticCurve::new(0.0);
        let data = sample_hermite(&c, 0.0, PI).unwrap();
        assert!((data.p0 - Complex::new(-1.0, 0.0)).abs() < 1e-15);
        assert!((data.p1 - Complex::new(1.0, 0.0)).abs() < 1e-15);
        assert!((data.k0 + 1.0).abs() < 1e-15);
        assert!((data.k1 + 1.0).abs() < 1e-15);
        assert!((data.length - PI).abs() < 1e-14);
    }

    #[test]
    fn arc_length_is_continuous_at_zero_omega() {
        let eps = AnalyticCurve::new(1e-9);
        assert!((eps.arc_length(0.0, 2.0) - 2.0).abs() <= 1e-8 * 2.0);
        let zero = AnalyticCurve::new(0.0);
        assert_eq!(zero.arc_length(0.0, 2.0), 2.0);
    }

    #[test]
    fn matched_speeds_give_affine_phi() {
        let phi = quintic_from_endpoint_data(0.25, 0.75, 0.5, 0.0, 0.5, 0.0);
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            assert!((phi.eval(t) - (0.25 + 0.5 * t)).abs() < 1e-15);
            assert!((phi.eval_prime(t) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn spiral_coarse_rows_match_references() {
        let rows = decay_table(0.2, &[1.0, 0.5, 0.25], Method::Biarc).unwrap();
        let want = [5.23963e-6, 1.48263e-7, 4.45464e-9];
        for (r, w) in rows.iter().zip(want) {
            assert!(
                (r.e_err - w).abs() < 1e-3 * w,
                "biarc e_err {} want {w}",
                r.e_err
            );
        }
        assert!(rows[0].decay_exponent.is_none());
        assert!((rows[1].decay_exponent.unwrap() - 5.14323).abs() < 1e-3);
        assert!((rows[2].decay_exponent.unwrap() - 5.05671).abs() < 1e-3);

        let rows = decay_table(0.2, &[1.0, 0.5], Method::Single).unwrap();
        let want = [1.02470e-5, 1.50891e-7];
        for (r, w) in rows.iter().zip(want) {
            assert!(
                (r.e_err - w).abs() < 1e-3 * w,
                "single e_err {} want {w}",
                r.e_err
            );
        }
        assert!((rows[1].decay_exponent.unwrap() - 6.08555).abs() < 1e-3);
    }

    #[test]
    fn semicircle_and_n16_circle_match_references() {
        let semi = circle_spline(2).unwrap();
        assert!(
            (semi.alpha0.abs() - 1.77441).abs() < 1e-5,
            "alpha0 {}",
            semi.alpha0
        );
        assert!((semi.report.e_err - 6.38885e-4).abs() < 1e-3 * 6.38885e-4);
        assert_eq!(semi.spline.num_spans(), 2);

        let n16 = circle_spline(16).unwrap();
        assert!((n16.report.e_err - 1.71943e-8).abs() < 1e-3 * 1.71943e-8);
    }

    #[test]
    fn circle_spans_are_rotationally_identical() {
        let study = circle_spline(4).unwrap();
        let curve = AnalyticCurve::new(0.0);
        let phi_span = 2.0 * PI / 4.0;
        let mut errs = Vec::new();
        for (j, span) in study.spline.spans().iter().enumerate() {
            let (a, b) = (j as f64 * phi_span, (j + 1) as f64 * phi_span);
            let phi = reparam_phi(&FittedCurve::Biarc(span), &curve, a, b).unwrap();
            errs.push(e_err(&FittedCurve::Biarc(span), &curve, &phi));
        }
        let (lo, hi) = errs
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(l, h), &e| (l.min(e), h.max(e)));
        assert!(hi - lo < 1e-14, "per-span spread {}", hi - lo);
        // Closed circle: last span ends where the first begins.
        let first = study.spline.spans()[0].point(0.0).unwrap();
        let last = study.spline.spans()[3].point(1.0).unwrap();
        assert!((first - last).abs() < 1e-12);
    }

    #[test]
    fn error_bound_dominates_point_to_curve_distance() {
        let curve = AnalyticCurve::new(0.0);
        let study = circle_spline(2).unwrap();
        let span = &study.spline.spans()[0];
        // The unit circle makes the true distance available in closed form.
        let mut max_true = 0.0_f64;
        for k in 0..=512 {
            let t = k as f64 / 512.0;
            let p = span.point(t).unwrap();
            max_true = max_true.max((p.abs() - 1.0).abs());
        }
        let phi = reparam_phi(&FittedCurve::Biarc(span), &curve, 0.0, PI).unwrap();
        let bound = e_err(&FittedCurve::Biarc(span), &curve, &phi);
        assert!(
            max_true <= bound * (1.0 + 1e-9) + 1e-15,
            "true {max_true} bound {bound}"
        );
    }

    #[test]
    fn ten_span_spiral_spline_matches_reference() {
        let s: Vec<f64> = (0..=10).map(|j| 3.0 * PI * j as f64 / 10.0).collect();
        let (nodes, lengths) = spiral_nodes(0.2, &s).unwrap();
        let sp = G2Spline::build(&nodes, &lengths, 1.0, 0.0, 0.0).unwrap();
        let curve = AnalyticCurve::new(0.2);
        let mut max_err = 0.0_f64;
        for (j, span) in sp.spans().iter().enumerate() {
            let phi = reparam_phi(&FittedCurve::Biarc(span), &curve, s[j], s[j + 1]).unwrap();
            max_err = max_err.max(e_err(&FittedCurve::Biarc(span), &curve, &phi));
        }
        assert!(
            (max_err - 2.09879e-5).abs() < 1e-3 * 2.09879e-5,
            "max E_err {max_err}"
        );
    }

    #[test]
    fn symmetric_data_has_symmetric_lambda_energy() {
        // Mirror-symmetric data: reflecting swaps the roles of the ends, so
        // the selected energy at λ and 1/λ must agree, making λ = 1 a
        // critical point.  On this data it is a local maximum, equal to the
        // λ = 1 reference energy.
        let data = HermiteData::new(
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new((PI / 3.0).cos(), (PI / 3.0).sin()),
            Complex::new((PI / 3.0).cos(), -(PI / 3.0).sin()),
            -0.5,
            -0.5,
            1.35,
        )
        .unwrap();
        let e = |lam: f64| energy_at_lambda(&data, lam).unwrap().0;
        let (e_12, e_inv) = (e(1.2), e(1.0 / 1.2));
        assert!((e_12 - e_inv).abs() < 1e-6 * e_12, "{e_12} vs {e_inv}");
        assert!((e(0.5) - e(2.0)).abs() < 1e-6 * e(2.0));
        let e_1 = e(1.0);
        assert!((e_1 - 3.514459).abs() < 1e-4, "E(1) = {e_1}");
        assert!(e_1 > e(0.9) && e_1 > e(1.1));
    }
}
