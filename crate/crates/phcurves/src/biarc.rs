//! Two-segment (biarc) G² Hermite interpolation with prescribed arc length.
//!
//! Given endpoints, unit tangents, signed curvatures and a total length L,
//! the construction produces a degree-7 PH curve made of two halves joined
//! C³-smoothly at the parametric midpoint.  All preimage coefficients are
//! closed-form once the endpoint speeds (α₀, α₁) are fixed; α₀ itself is the
//! root of a scalar length equation e(α₀) = 0, which for β₀ = β₁ = 0 is
//! guaranteed to have a positive root on each of the two sign branches
//! α₁ = ±λα₀.  Enumerating the sign flips of (α₀, α₁) yields four candidate
//! interpolants; the one with least bending energy is selected.

use crate::cpoly::{chi, Complex};
use crate::error::{Error, Result};
use crate::phcurve::{CurveSample, PHSegment7, PreimageCubic};
use crate::real::Real;

/// G² Hermite boundary data plus the target arc length.
#[derive(Clone, Copy, Debug)]
pub struct HermiteData<T = f64> {
    pub p0: Complex<T>,
    pub p1: Complex<T>,
    /// Unit tangent at p0 (normalized exactly on construction).
    pub t0: Complex<T>,
    /// Unit tangent at p1.
    pub t1: Complex<T>,
    pub k0: T,
    pub k1: T,
    /// Total arc length; must exceed the chord |p1 − p0|.
    pub length: T,
}

impl<T: Real> HermiteData<T> {
    pub fn new(
        p0: Complex<T>,
        p1: Complex<T>,
        t0: Complex<T>,
        t1: Complex<T>,
        k0: T,
        k1: T,
        length: T,
    ) -> Result<Self> {
        for v in [
            p0.re, p0.im, p1.re, p1.im, t0.re, t0.im, t1.re, t1.im, k0, k1, length,
        ] {
            if !v.to_f64().is_finite() {
                return Err(Error::InvalidInput {
                    reason: "non-finite component in Hermite data".into(),
                });
            }
        }
        let chord = (p1 - p0).abs();
        if !(chord > T::ZERO) {
            return Err(Error::InvalidInput {
                reason: "endpoints coincide".into(),
            });
        }
        let mut tangents = [t0, t1];
        for t in &mut tangents {
            let a = t.abs();
            if (a.to_f64() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidInput {
                    reason: format!("tangent has magnitude {}, expected 1", a.to_f64()),
                });
            }
            *t = *t / a;
        }
        if !(length > chord) {
            return Err(Error::Infeasible {
                reason: format!(
                    "arc length {} does not exceed the chord {}",
                    length.to_f64(),
                    chord.to_f64()
                ),
            });
        }
        Ok(HermiteData {
            p0,
            p1,
            t0: tangents[0],
            t1: tangents[1],
            k0,
            k1,
            length,
        })
    }

    /// ΔP₀ = p1 − p0.
    pub fn delta(&self) -> Complex<T> {
        self.p1 - self.p0
    }

    pub fn chord(&self) -> T {
        self.delta().abs()
    }

    pub fn project_f64(&self) -> HermiteData<f64> {
        HermiteData {
            p0: self.p0.to_f64(),
            p1: self.p1.to_f64(),
            t0: self.t0.to_f64(),
            t1: self.t1.to_f64(),
            k0: self.k0.to_f64(),
            k1: self.k1.to_f64(),
            length: self.length.to_f64(),
        }
    }
}

/// The two sign branches of the endpoint-speed coupling α₁ = ±λα₀.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignBranch {
    /// α₁ = +λα₀.
    PlusPlus,
    /// α₁ = −λα₀.
    PlusMinus,
}

impl SignBranch {
    pub const ALL: [SignBranch; 2] = [SignBranch::PlusPlus, SignBranch::PlusMinus];

    pub fn sign(self) -> f64 {
        match self {
            SignBranch::PlusPlus => 1.0,
            SignBranch::PlusMinus => -1.0,
        }
    }

    fn order(self) -> usize {
        match self {
            SignBranch::PlusPlus => 0,
            SignBranch::PlusMinus => 1,
        }
    }
}

/// The free parameters of the biarc family.
#[derive(Clone, Copy, Debug)]
pub struct FreeParams {
    pub beta0: f64,
    pub beta1: f64,
    /// Tangent-magnitude ratio: |r′(1)|/|r′(0)| = λ².
    pub lambda: f64,
    pub branch: SignBranch,
    /// Sign in front of χ when solving the joint quadratic; flipping it
    /// together with (α₀, α₁) reproduces the same curve, so construction
    /// keeps it fixed at +1.
    pub zeta_plus: bool,
}

impl FreeParams {
    pub fn with_branch(lambda: f64, beta0: f64, beta1: f64, branch: SignBranch) -> Self {
        FreeParams {
            beta0,
            beta1,
            lambda,
            branch,
            zeta_plus: true,
        }
    }
}

impl Default for FreeParams {
    fn default() -> Self {
        FreeParams::with_branch(1.0, 0.0, 0.0, SignBranch::PlusPlus)
    }
}

/// Outermost preimage coefficients of the two halves.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryPreimages<T = f64> {
    pub wa0: Complex<T>,
    pub wa1: Complex<T>,
    pub wb2: Complex<T>,
    pub wb3: Complex<T>,
}

/// The first two preimage coefficients of half A and the last two of half B,
/// chosen so the boundary point, tangent and curvature data are matched for
/// any (α₀, α₁, β₀, β₁) with α₀α₁ ≠ 0.
pub fn boundary_preimages<T: Real>(
    data: &HermiteData<T>,
    alpha0: T,
    alpha1: T,
    beta0: T,
    beta1: T,
) -> Result<BoundaryPreimages<T>> {
    if alpha0 == T::ZERO || alpha1 == T::ZERO {
        return Err(Error::DegeneratePreimage);
    }
    let twelfth = T::ONE / T::from_i32(12);
    let n0 = data.t0.mul_i();
    let n1 = data.t1.mul_i();

    let wa0 = chi(data.t0) * alpha0;
    let a0sq = alpha0 * alpha0;
    let a0quart = a0sq * a0sq;
    let wa1 = (data.t0 * (a0sq + beta0 * twelfth) + n0 * (data.k0 * a0quart * twelfth)) / wa0;

    let wb3 = chi(data.t1) * alpha1;
    let a1sq = alpha1 * alpha1;
    let a1quart = a1sq * a1sq;
    let wb2 = (data.t1 * (a1sq - beta1 * twelfth) - n1 * (data.k1 * a1quart * twelfth)) / wb3;

    Ok(BoundaryPreimages { wa0, wa1, wb2, wb3 })
}

/// Coefficients of the joint quadratic d² + 2Ud + V = 0 together with the
/// real constant v of the arc-length expression.
#[derive(Clone, Copy, Debug)]
pub struct JointSystem<T = f64> {
    pub u: Complex<T>,
    pub v: Complex<T>,
    pub v_real: T,
}

pub fn joint_uv<T: Real>(data: &HermiteData<T>, w: &BoundaryPreimages<T>) -> JointSystem<T> {
    let i = T::from_i32;
    let inv52 = T::ONE / i(52);
    let &BoundaryPreimages { wa0, wa1, wb2, wb3 } = w;

    let u = ((wa0 + wb3) * i(5) + (wa1 + wb2) * i(39)) * inv52;
    let v = ((wa0 * wa0 + wb3 * wb3) * i(40)
        + (wa0 * wa1 + wb2 * wb3) * i(49)
        + (wa1 * wa1 + wb2 * wb2) * i(62)
        + wa0 * wb2
        + wa1 * wb3
        + wa1 * wb2 * i(28)
        - data.delta() * i(560))
        * inv52;
    let v_real = (wa0.norm_sqr() * i(40)
        + wb3.norm_sqr() * i(40)
        + wa1.norm_sqr() * i(62)
        + wb2.norm_sqr() * i(62)
        + wa0.dot(wa1) * i(49)
        + wb2.dot(wb3) * i(49)
        + wa1.dot(wb2) * i(28)
        + wa0.dot(wb2)
        + wa1.dot(wb3)
        - data.length * i(560))
        * inv52;
    JointSystem { u, v, v_real }
}

/// Root of the joint quadratic: d = ±χ(U² − V) − U.
pub fn solve_joint<T: Real>(u: Complex<T>, v: Complex<T>, zeta_plus: bool) -> Complex<T> {
    let root = chi(u * u - v);
    let signed = if zeta_plus { root } else { -root };
    signed - u
}

/// The arc-length residual e = |U² − V| − |U|² + v.  The constructed biarc
/// has total length L exactly when e = 0.
pub fn length_residual<T: Real>(
    data: &HermiteData<T>,
    alpha0: T,
    alpha1: T,
    beta0: T,
    beta1: T,
) -> Result<T> {
    let w = boundary_preimages(data, alpha0, alpha1, beta0, beta1)?;
    let j = joint_uv(data, &w);
    Ok((j.u * j.u - j.v).abs() - j.u.norm_sqr() + j.v_real)
}

/// Limit of the residual as α₀ → 0 with α₁ = ±λα₀ and β₀ = β₁ = 0:
/// e(0) = (140/13)(|ΔP₀| − L), always negative for admissible data.
pub fn length_residual_limit0<T: Real>(data: &HermiteData<T>) -> T {
    T::from_i32(140) / T::from_i32(13) * (data.chord() - data.length)
}

/// All positive roots α₀ of the length equation on one branch, ascending.
///
/// The residual is even in α₀, so the scan runs over x = α₀² on a geometric
/// grid from 1e-6·|ΔP₀| up to 1e4·L; every sign change is narrowed by
/// bisection and finished with a few central-difference Newton steps.  For
/// β₀ = β₁ = 0 the list is guaranteed nonempty; for other β it may be empty.
pub fn solve_alpha(
    data: &HermiteData<f64>,
    lambda: f64,
    beta0: f64,
    beta1: f64,
    branch: SignBranch,
) -> Vec<f64> {
    let s1 = branch.sign() * lambda;
    let e_of_x = |x: f64| -> f64 {
        let a = x.sqrt();
        length_residual(data, a, s1 * a, beta0, beta1).expect("alpha > 0 in scan")
    };

    let x_min = 1e-6 * data.chord();
    let x_max = 1e4 * data.length;
    let ratio = 1.04f64;
    let mut roots: Vec<f64> = Vec::new();

    let mut x_lo = x_min;
    let mut f_lo = e_of_x(x_lo);
    while x_lo < x_max {
        let x_hi = (x_lo * ratio).min(x_max);
        let f_hi = e_of_x(x_hi);
        if f_lo == 0.0 {
            roots.push(x_lo.sqrt());
        } else if (f_lo < 0.0) != (f_hi < 0.0) {
            // Bisect the bracket, then polish.
            let (mut lo, mut hi, mut flo) = (x_lo, x_hi, f_lo);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = e_of_x(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            let mut x = 0.5 * (lo + hi);
            for _ in 0..4 {
                let h = 1e-6 * x;
                let df = (e_of_x(x + h) - e_of_x(x - h)) / (2.0 * h);
                if df == 0.0 {
                    break;
                }
                let step = e_of_x(x) / df;
                let next = x - step;
                if !(next > 0.0) || !next.is_finite() {
                    break;
                }
                x = next;
                if step.abs() <= 1e-15 * x {
                    break;
                }
            }
            roots.push(x.sqrt());
        }
        x_lo = x_hi;
        f_lo = f_hi;
    }

    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-8 * b.abs().max(1.0));
    roots
}

/// Newton-polishes a root of the length equation in the scalar type `T`,
/// starting from an `f64`-accurate value.  Used to push roots to
/// double-double accuracy before building high-precision segments.
pub fn refine_alpha<T: Real>(
    data: &HermiteData<T>,
    lambda: T,
    beta0: T,
    beta1: T,
    branch: SignBranch,
    alpha_init: T,
    h_rel: T,
    iters: usize,
) -> T {
    let s1 = T::from_f64(branch.sign()) * lambda;
    let e_of_x = |x: T| -> T {
        let a = x.sqrt();
        length_residual(data, a, s1 * a, beta0, beta1).expect("alpha > 0 in refine")
    };
    let mut x = alpha_init * alpha_init;
    for _ in 0..iters {
        let h = h_rel * x;
        let df = (e_of_x(x + h) - e_of_x(x - h)) / (h + h);
        if df == T::ZERO {
            break;
        }
        let step = e_of_x(x) / df;
        x = x - step;
    }
    x.sqrt()
}

/// A solved biarc: two PH halves over [0, ½] and [½, 1] of the curve
/// parameter, C³ at the joint, matching the boundary G² data, with the
/// parameters that produced it and its cached bending energy.
#[derive(Clone, Debug)]
pub struct PHBiarc<T = f64> {
    half_a: PHSegment7<T>,
    half_b: PHSegment7<T>,
    params: FreeParams,
    alpha0: T,
    alpha1: T,
    energy: f64,
}

impl<T: Real> PHBiarc<T> {
    /// Builds the closed-form biarc for given endpoint speeds.  The curve
    /// matches position/tangent/curvature at both ends for any admissible
    /// (α₀, α₁, β₀, β₁); its total length equals L only when α₀ solves the
    /// length equation.
    pub fn construct(
        data: &HermiteData<T>,
        alpha0: T,
        alpha1: T,
        params: FreeParams,
    ) -> Result<PHBiarc<T>> {
        let beta0 = T::from_f64(params.beta0);
        let beta1 = T::from_f64(params.beta1);
        let w = boundary_preimages(data, alpha0, alpha1, beta0, beta1)?;
        let j = joint_uv(data, &w);
        let d = solve_joint(j.u, j.v, params.zeta_plus);

        let half = T::from_f64(0.5);
        let quarter = T::from_f64(0.25);
        let wa2 = (w.wa1 + d) * half;
        let wb1 = (w.wb2 + d) * half;
        let mid = w.wa1 * quarter + d * half + w.wb2 * quarter;

        let pre_a = PreimageCubic::new(w.wa0, w.wa1, wa2, mid);
        let pre_b = PreimageCubic::new(mid, wb1, w.wb2, w.wb3);
        let half_a = PHSegment7::new(pre_a, data.p0, half)?;
        let joint_point = *half_a.control_points().last().unwrap();
        let half_b = PHSegment7::new(pre_b, joint_point, half)?;

        let energy = match (
            segment_energy_f64(&half_a),
            segment_energy_f64(&half_b),
        ) {
            (Ok(ea), Ok(eb)) => ea + eb,
            _ => f64::INFINITY,
        };

        Ok(PHBiarc {
            half_a,
            half_b,
            params,
            alpha0,
            alpha1,
            energy,
        })
    }

    pub fn half_a(&self) -> &PHSegment7<T> {
        &self.half_a
    }

    pub fn half_b(&self) -> &PHSegment7<T> {
        &self.half_b
    }

    pub fn params(&self) -> &FreeParams {
        &self.params
    }

    pub fn alpha0(&self) -> T {
        self.alpha0
    }

    pub fn alpha1(&self) -> T {
        self.alpha1
    }

    /// Cached parametric bending energy ∫₀¹ κ²(t) dt (f64 quadrature);
    /// +∞ when a half carries a cusp.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn arc_length(&self) -> T {
        self.half_a.arc_length() + self.half_b.arc_length()
    }

    fn split(&self, t: T) -> (&PHSegment7<T>, T) {
        let half = T::from_f64(0.5);
        if t < half {
            (&self.half_a, t + t)
        } else {
            (&self.half_b, (t - half) + (t - half))
        }
    }

    /// Curve point at global parameter t ∈ [0, 1].
    pub fn point(&self, t: T) -> Result<Complex<T>> {
        let (seg, u) = self.split(t);
        seg.point(u)
    }

    /// dr/dt with respect to the global parameter.
    pub fn derivative1(&self, t: T) -> Result<Complex<T>> {
        let (seg, u) = self.split(t);
        Ok(seg.derivative1(u)? * T::from_i32(2))
    }

    pub fn derivative2(&self, t: T) -> Result<Complex<T>> {
        let (seg, u) = self.split(t);
        Ok(seg.derivative2(u)? * T::from_i32(4))
    }

    /// Frame/curvature sample at global parameter t; speed is |dr/dt|.
    pub fn evaluate(&self, t: T) -> Result<CurveSample<T>> {
        let (seg, u) = self.split(t);
        let mut s = seg.evaluate(u)?;
        s.speed = s.speed + s.speed;
        Ok(s)
    }

    pub fn project_f64(&self) -> PHBiarc<f64> {
        let pre_a = self.half_a.preimage().to_f64();
        let pre_b = self.half_b.preimage().to_f64();
        let half_a =
            PHSegment7::new(pre_a, self.half_a.start().to_f64(), 0.5).expect("valid half");
        let half_b =
            PHSegment7::new(pre_b, self.half_b.start().to_f64(), 0.5).expect("valid half");
        PHBiarc {
            half_a,
            half_b,
            params: self.params,
            alpha0: self.alpha0.to_f64(),
            alpha1: self.alpha1.to_f64(),
            energy: self.energy,
        }
    }

    /// The same curve rotated by `angle` about `center`.  The hodograph
    /// rotates by e^{iφ}, so both preimage cubics are multiplied by
    /// e^{iφ/2}; α parameters and bending energy are rotation invariants.
    pub fn rotated(&self, center: Complex<T>, angle: T) -> PHBiarc<T> {
        let (s, c) = angle.sin_cos();
        let rot = Complex::new(c, s);
        let (sh, ch) = (angle / T::from_i32(2)).sin_cos();
        let half_rot = Complex::new(ch, sh);

        let map_pre = |p: &PreimageCubic<T>| {
            let [w0, w1, w2, w3] = p.w;
            PreimageCubic::new(w0 * half_rot, w1 * half_rot, w2 * half_rot, w3 * half_rot)
        };
        let start_a = center + rot * (self.half_a.start() - center);
        let half_a = PHSegment7::new(map_pre(self.half_a.preimage()), start_a, self.half_a.scale())
            .expect("rotation preserves validity");
        let joint = *half_a.control_points().last().unwrap();
        let half_b = PHSegment7::new(map_pre(self.half_b.preimage()), joint, self.half_b.scale())
            .expect("rotation preserves validity");
        PHBiarc {
            half_a,
            half_b,
            params: self.params,
            alpha0: self.alpha0,
            alpha1: self.alpha1,
            energy: self.energy,
        }
    }
}

fn segment_energy_f64<T: Real>(seg: &PHSegment7<T>) -> Result<f64> {
    let pre = seg.preimage().to_f64();
    let seg64 = PHSegment7::new(pre, seg.start().to_f64(), seg.scale().to_f64())?;
    seg64.bending_energy()
}

/// The candidate set for one (λ, β₀, β₁) together with the energy-selected
/// index; `selected` is `None` only when no branch has a root (possible for
/// β ≠ 0 only).
#[derive(Clone, Debug)]
pub struct Interpolation<T = f64> {
    pub candidates: Vec<PHBiarc<T>>,
    pub selected: Option<usize>,
}

impl<T: Real> Interpolation<T> {
    pub fn best(&self) -> Option<&PHBiarc<T>> {
        self.selected.map(|i| &self.candidates[i])
    }
}

/// Solves the length equation on both branches and enumerates the sign-flip
/// candidates: (α₀, λα₀) and (−α₀, −λα₀) from the + branch, (−α₀, λα₀) and
/// (α₀, −λα₀) from the − branch.  Selection is minimum bending energy; ties
/// (within 1e-9 relative) go to the smallest |α₀|, then branch order.
pub fn interpolate(
    data: &HermiteData<f64>,
    lambda: f64,
    beta0: f64,
    beta1: f64,
) -> Result<Interpolation<f64>> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput {
            reason: format!("lambda must be positive, got {lambda}"),
        });
    }
    let mut candidates = Vec::new();
    for branch in SignBranch::ALL {
        let pairs: [(f64, f64); 2] = match branch {
            SignBranch::PlusPlus => [(1.0, 1.0), (-1.0, -1.0)],
            SignBranch::PlusMinus => [(-1.0, 1.0), (1.0, -1.0)],
        };
        for root in solve_alpha(data, lambda, beta0, beta1, branch) {
            for (s0, s1) in pairs {
                let alpha0 = s0 * root;
                let alpha1 = s1 * lambda * root;
                let params = FreeParams::with_branch(lambda, beta0, beta1, branch);
                candidates.push(PHBiarc::construct(data, alpha0, alpha1, params)?);
            }
        }
    }
    let selected = select_min_energy(&candidates);
    Ok(Interpolation {
        candidates,
        selected,
    })
}

fn select_min_energy(candidates: &[PHBiarc<f64>]) -> Option<usize> {
    let min = candidates
        .iter()
        .map(|c| c.energy)
        .fold(f64::INFINITY, f64::min);
    if candidates.is_empty() {
        return None;
    }
    let tol = 1e-9 * min.abs();
    let mut best: Option<usize> = None;
    for (i, c) in candidates.iter().enumerate() {
        if c.energy > min + tol {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(b) => {
                let cur = &candidates[b];
                let key_new = (c.alpha0.abs(), c.params.branch.order());
                let key_old = (cur.alpha0.abs(), cur.params.branch.order());
                if key_new < key_old {
                    best = Some(i);
                }
            }
        }
    }
    best
}

/// Diagnostic constants from the solvability analysis of the length
/// equation: the free coefficient c₀, the leading (α₀⁶) coefficient c₁ of
/// the polynomial part, the free coefficient c₂ of |U²−V|², and the tangent
/// factor Θ.
#[derive(Clone, Copy, Debug)]
pub struct SolvabilityInfo {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub theta_factor: f64,
}

/// Computes the solvability constants for one branch.  Tangent angles are
/// measured against the chord direction; the Θ formula uses half-angle
/// tangents and is undefined when either tangent opposes the chord (θ = π).
pub fn theorem2_coefficients(
    data: &HermiteData<f64>,
    lambda: f64,
    branch: SignBranch,
) -> Result<SolvabilityInfo> {
    let dir = data.delta() / data.chord();
    let rel0 = data.t0 / dir;
    let rel1 = data.t1 / dir;
    let th0 = rel0.im.atan2(rel0.re);
    let th1 = rel1.im.atan2(rel1.re);
    for th in [th0, th1] {
        if (th.abs() - std::f64::consts::PI).abs() < 1e-9 {
            return Err(Error::InvalidInput {
                reason: "tangent opposes the chord (θ = π); Θ is undefined".into(),
            });
        }
    }
    let theta_factor = (th0.cos() + 1.0).sqrt()
        * (th1.cos() + 1.0).sqrt()
        * ((0.5 * th0).tan() * (0.5 * th1).tan() + 1.0);
    let frac = 140.0 / 13.0;
    let c0 = -frac * data.length;
    let c2 = (frac * data.chord()).powi(2);
    let l3 = lambda.powi(3);
    let c1 = (131.0 * data.k0 * data.k0
        + branch.sign() * 61.0 * theta_factor * l3 * data.k0 * data.k1
        + 131.0 * l3 * l3 * data.k1 * data.k1)
        / 29952.0;
    Ok(SolvabilityInfo {
        c0,
        c1,
        c2,
        theta_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Dd;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn unit(theta: f64) -> Complex<f64> {
        c(theta.cos(), theta.sin())
    }

    /// First Hermite configuration used throughout the experiments:
    /// chord 1, tangents at −π/4 and −π/8, curvatures 1 and −1, length 1.1.
    fn data_set1() -> HermiteData<f64> {
        HermiteData::new(
            c(0.0, 0.0),
            c(1.0, 0.0),
            unit(-PI / 4.0),
            unit(-PI / 8.0),
            1.0,
            -1.0,
            1.1,
        )
        .unwrap()
    }

    #[test]
    fn hermite_data_validation() {
        let ok = data_set1();
        assert!((ok.t0.abs() - 1.0).abs() < 1e-15);

        // Arc length must exceed the chord.
        assert!(matches!(
            HermiteData::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), 0.0, 0.0, 0.99),
            Err(Error::Infeasible { .. })
        ));
        // Coincident endpoints.
        assert!(HermiteData::new(
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            0.0,
            0.0,
            1.0
        )
        .is_err());
        // Grossly non-unit tangent.
        assert!(HermiteData::new(
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 1.0),
            c(1.0, 0.0),
            0.0,
            0.0,
            1.5
        )
        .is_err());
    }

    #[test]
    fn boundary_preimages_pinned() {
        let straight =
            HermiteData::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), 0.0, 0.0, 1.01)
                .unwrap();
        let w = boundary_preimages(&straight, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert!((w.wa0 - c(1.0, 0.0)).abs() < 1e-15);
        assert!((w.wa1 - c(1.0, 0.0)).abs() < 1e-15);

        let up = HermiteData::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 1.0), 0.0, 0.0, 1.01)
            .unwrap();
        let w = boundary_preimages(&up, 2.0, 1.0, 0.0, 0.0).unwrap();
        let s = 2.0f64.sqrt();
        assert!((w.wa0 - c(s, s)).abs() < 1e-14);
        // wA1·wA0 must equal α₀²t₀ when β₀ = κ₀ = 0.
        assert!((w.wa1 * w.wa0 - c(0.0, 4.0)).abs() < 1e-13);
        assert!((w.wa1 - c(s, s)).abs() < 1e-14);

        assert!(matches!(
            boundary_preimages(&straight, 0.0, 1.0, 0.0, 0.0),
            Err(Error::DegeneratePreimage)
        ));
    }

    #[test]
    fn boundary_preimages_square_to_tangent() {
        let data = data_set1();
        let w = boundary_preimages(&data, 1.3, -0.8, 2.0, -1.0).unwrap();
        let sq0 = w.wa0 * w.wa0;
        let want0 = data.t0 * (1.3f64 * 1.3);
        assert!((sq0 - want0).abs() <= 1e-13 * want0.abs());
        let sq1 = w.wb3 * w.wb3;
        let want1 = data.t1 * (0.8f64 * 0.8);
        assert!((sq1 - want1).abs() <= 1e-13 * want1.abs());
    }

    #[test]
    fn joint_uv_pinned() {
        let data =
            HermiteData::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), 0.0, 0.0, 1.5)
                .unwrap();
        let zeros = BoundaryPreimages {
            wa0: c(0.0, 0.0),
            wa1: c(0.0, 0.0),
            wb2: c(0.0, 0.0),
            wb3: c(0.0, 0.0),
        };
        let j = joint_uv(&data, &zeros);
        assert_eq!(j.u, c(0.0, 0.0));
        assert!((j.v - c(-560.0 / 52.0, 0.0)).abs() < 1e-13);

        let ones = BoundaryPreimages {
            wa0: c(1.0, 0.0),
            wa1: c(1.0, 0.0),
            wb2: c(1.0, 0.0),
            wb3: c(1.0, 0.0),
        };
        let j = joint_uv(&data, &ones);
        assert!((j.u - c(22.0 / 13.0, 0.0)).abs() < 1e-14);
        assert!((j.v - c(-57.0 / 13.0, 0.0)).abs() < 1e-13);
    }

    #[test]
    fn solve_joint_pinned() {
        let d = solve_joint(c(0.0, 0.0), c(-1.0, 0.0), true);
        assert!((d - c(1.0, 0.0)).abs() < 1e-15);

        let d = solve_joint(c(1.0, 0.0), c(0.0, 0.0), true);
        assert!(d.abs() < 1e-15);

        let u = c(22.0 / 13.0, 0.0);
        let v = c(-57.0 / 13.0, 0.0);
        let d = solve_joint(u, v, true);
        let residual = d * d + u * d * 2.0 + v;
        assert!(residual.abs() < 1e-13);
    }

    #[test]
    fn residual_limit_and_parity() {
        let data = data_set1();
        let lim = length_residual_limit0(&data);
        assert!((lim - (-14.0 / 13.0)).abs() < 1e-13);

        // e at a tiny α approaches the limit quadratically.
        let e_small = length_residual(&data, 1e-5, 1e-5, 0.0, 0.0).unwrap();
        assert!((e_small - lim).abs() < 1e-8);

        // Evenness: e(α) = e(−α) for both coupling signs.
        for s in [1.0, -1.0] {
            let ep = length_residual(&data, 0.9, s * 0.9, 0.0, 0.0).unwrap();
            let em = length_residual(&data, -0.9, -s * 0.9, 0.0, 0.0).unwrap();
            assert!((ep - em).abs() <= 1e-13 * ep.abs().max(1.0));
        }
    }

    #[test]
    fn solve_alpha_reference_roots() {
        let data = data_set1();
        let plus = solve_alpha(&data, 1.0, 0.0, 0.0, SignBranch::PlusPlus);
        assert_eq!(plus.len(), 1, "roots {plus:?}");
        assert!((plus[0] - 1.159323).abs() < 1e-5, "got {}", plus[0]);

        let minus = solve_alpha(&data, 1.0, 0.0, 0.0, SignBranch::PlusMinus);
        assert_eq!(minus.len(), 1, "roots {minus:?}");
        assert!((minus[0] - 0.967130).abs() < 1e-5, "got {}", minus[0]);

        for (branch, roots) in [(SignBranch::PlusPlus, &plus), (SignBranch::PlusMinus, &minus)] {
            for &r in roots.iter() {
                let e = length_residual(&data, r, branch.sign() * r, 0.0, 0.0).unwrap();
                assert!(e.abs() <= 1e-10 * (1.0 + data.length), "residual {e}");
            }
        }
    }

    #[test]
    fn interpolate_set1_energies_and_selection() {
        let data = data_set1();
        let sol = interpolate(&data, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(sol.candidates.len(), 4);
        let best = sol.best().unwrap();
        assert!((best.energy() - 6.01964).abs() < 1e-4 * 6.01964);
        assert!(best.alpha0() > 0.0 && best.alpha1() > 0.0);

        let mut energies: Vec<f64> = sol.candidates.iter().map(|b| b.energy()).collect();
        energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [6.01964, 1.0393e4, 3.44494e4, 1.64506e6];
        for (got, want) in energies.iter().zip(want) {
            assert!(
                (got - want).abs() < 1e-3 * want,
                "energy {got} vs {want}"
            );
        }
    }

    #[test]
    fn biarc_geometric_invariants() {
        let data = data_set1();
        let sol = interpolate(&data, 1.0, 0.0, 0.0).unwrap();
        let b = sol.best().unwrap();

        // Length exactness.
        assert!((b.arc_length() - data.length).abs() <= 1e-10 * data.length);

        // C0 at the joint is structural; endpoint must hit P1.
        let end = *b.half_b().control_points().last().unwrap();
        assert!((end - data.p1).abs() <= 1e-13 * data.chord().max(1.0));

        // C3 joint: local derivatives of the halves agree at the junction.
        let a = b.half_a();
        let bb = b.half_b();
        let pairs = [
            (a.derivative1(1.0).unwrap(), bb.derivative1(0.0).unwrap()),
            (a.derivative2(1.0).unwrap(), bb.derivative2(0.0).unwrap()),
            (a.derivative3(1.0).unwrap(), bb.derivative3(0.0).unwrap()),
        ];
        for (x, y) in pairs {
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{x:?} vs {y:?}");
        }

        // G2 boundary recovery.
        let s0 = b.evaluate(0.0).unwrap();
        let s1 = b.evaluate(1.0).unwrap();
        assert!((s0.point - data.p0).abs() < 1e-14);
        assert!((s1.point - data.p1).abs() < 1e-13);
        assert!((s0.unit_tangent - data.t0).abs() <= 1e-10);
        assert!((s1.unit_tangent - data.t1).abs() <= 1e-10);
        assert!((s0.signed_curvature - data.k0).abs() <= 1e-9 * (1.0 + data.k0.abs()));
        assert!((s1.signed_curvature - data.k1).abs() <= 1e-9 * (1.0 + data.k1.abs()));

        // β = 0 makes r′ and r″ orthogonal at the ends.
        let d1 = b.derivative1(0.0).unwrap();
        let d2 = b.derivative2(0.0).unwrap();
        assert!(d1.dot(d2).abs() <= 1e-10 * d1.abs() * d2.abs().max(1.0));
        let d1 = b.derivative1(1.0).unwrap();
        let d2 = b.derivative2(1.0).unwrap();
        assert!(d1.dot(d2).abs() <= 1e-10 * d1.abs() * d2.abs().max(1.0));
    }

    #[test]
    fn sign_flip_with_zeta_reproduces_curve() {
        let data = data_set1();
        let root = solve_alpha(&data, 1.0, 0.0, 0.0, SignBranch::PlusPlus)[0];
        let plus = PHBiarc::construct(
            &data,
            root,
            root,
            FreeParams::with_branch(1.0, 0.0, 0.0, SignBranch::PlusPlus),
        )
        .unwrap();
        let mut flipped_params = FreeParams::with_branch(1.0, 0.0, 0.0, SignBranch::PlusPlus);
        flipped_params.zeta_plus = false;
        let minus = PHBiarc::construct(&data, -root, -root, flipped_params).unwrap();
        for (p, q) in plus
            .half_a()
            .control_points()
            .iter()
            .chain(plus.half_b().control_points())
            .zip(minus.half_a().control_points().iter().chain(minus.half_b().control_points()))
        {
            assert!((*p - *q).abs() <= 1e-13);
        }
    }

    #[test]
    fn tangent_ratio_follows_lambda() {
        let data = data_set1();
        let lambda = 1.3;
        let sol = interpolate(&data, lambda, 0.0, 0.0).unwrap();
        let b = sol.best().unwrap();
        let r0 = b.derivative1(0.0).unwrap().abs();
        let r1 = b.derivative1(1.0).unwrap().abs();
        assert!((r1 / r0 - lambda * lambda).abs() <= 1e-10 * lambda * lambda);
    }

    #[test]
    fn solvability_constants() {
        let data = data_set1();
        let info = theorem2_coefficients(&data, 1.0, SignBranch::PlusPlus).unwrap();
        assert!((info.c0 - (-140.0 / 13.0 * 1.1)).abs() < 1e-12);
        assert!((info.c2 - (140.0 / 13.0f64).powi(2)).abs() < 1e-10);
        assert!(info.c1 > 0.0);

        // The polynomial part e₁ = −|U|² + v is even of degree 6; its value
        // at large α divided by α⁶ approaches c1, and its value at small α
        // approaches c0.  The free coefficient of e₂ = |U²−V|² is c2.
        let e_parts = |alpha: f64, branch: SignBranch| -> (f64, f64) {
            let w =
                boundary_preimages(&data, alpha, branch.sign() * alpha, 0.0, 0.0).unwrap();
            let j = joint_uv(&data, &w);
            let e1 = -j.u.norm_sqr() + j.v_real;
            let e2 = (j.u * j.u - j.v).norm_sqr();
            (e1, e2)
        };
        for branch in SignBranch::ALL {
            let info = theorem2_coefficients(&data, 1.0, branch).unwrap();
            let a = 1.0e4;
            let (e1, _) = e_parts(a, branch);
            let ratio = e1 / a.powi(6);
            assert!(
                (ratio - info.c1).abs() <= 1e-6 * info.c1.abs(),
                "{branch:?}: ratio {ratio} vs c1 {}",
                info.c1
            );
            let (e1_small, e2_small) = e_parts(1e-5, branch);
            assert!((e1_small - info.c0).abs() < 1e-8);
            assert!((e2_small - info.c2).abs() < 1e-6);
        }

        // Equal angles attain the bound |Θ| = 2.
        let sym = HermiteData::new(
            c(0.0, 0.0),
            c(1.0, 0.0),
            unit(PI / 5.0),
            unit(PI / 5.0),
            0.3,
            0.7,
            1.4,
        )
        .unwrap();
        let info = theorem2_coefficients(&sym, 1.0, SignBranch::PlusPlus).unwrap();
        assert!((info.theta_factor.abs() - 2.0).abs() < 1e-12);

        // κ = 0 collapses c1 to zero.
        let flat =
            HermiteData::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), 0.0, 0.0, 1.2)
                .unwrap();
        let info = theorem2_coefficients(&flat, 1.0, SignBranch::PlusPlus).unwrap();
        assert_eq!(info.c1, 0.0);

        // θ = π is reported as undefined.
        let opp =
            HermiteData::new(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), 0.5, 0.5, 2.0)
                .unwrap();
        assert!(theorem2_coefficients(&opp, 1.0, SignBranch::PlusPlus).is_err());
    }

    #[test]
    fn double_double_construction_matches_f64() {
        let data = data_set1();
        let root = solve_alpha(&data, 1.0, 0.0, 0.0, SignBranch::PlusPlus)[0];
        let b64 = PHBiarc::construct(&data, root, root, FreeParams::default()).unwrap();

        let ddata = HermiteData::<Dd>::new(
            Complex::from_f64(0.0, 0.0),
            Complex::from_f64(1.0, 0.0),
            {
                let (s, cth) = Dd::from_f64(-PI / 4.0).sin_cos();
                Complex::new(cth, s)
            },
            {
                let (s, cth) = Dd::from_f64(-PI / 8.0).sin_cos();
                Complex::new(cth, s)
            },
            Dd::from_f64(1.0),
            Dd::from_f64(-1.0),
            Dd::from_f64(1.1),
        )
        .unwrap();
        let rdd = refine_alpha(
            &ddata,
            Dd::ONE,
            Dd::ZERO,
            Dd::ZERO,
            SignBranch::PlusPlus,
            Dd::from_f64(root),
            Dd::from_f64(1e-13),
            6,
        );
        assert!((rdd.to_f64() - root).abs() < 1e-9);
        let e_dd = length_residual(&ddata, rdd, rdd, Dd::ZERO, Dd::ZERO)
            .unwrap()
            .to_f64()
            .abs();
        assert!(e_dd < 1e-25, "double-double residual {e_dd}");

        let bdd = PHBiarc::construct(&ddata, rdd, rdd, FreeParams::default()).unwrap();
        for (p, q) in b64
            .half_a()
            .control_points()
            .iter()
            .zip(bdd.half_a().control_points())
        {
            assert!((*p - q.to_f64()).abs() < 1e-10);
        }
        assert!((bdd.arc_length() - Dd::from_f64(1.1)).to_f64().abs() < 1e-25);
    }
}
