//! Single-segment G² Hermite interpolation with prescribed arc length.
//!
//! One degree-7 PH curve over the full parameter interval can match the same
//! data as the two-segment construction, but only by solving a genuinely
//! nonlinear system: with α₁ = ±λα₀ fixed, the endpoint condition (complex)
//! and the length condition (real) leave three unknowns (α₀, β₀, β₁) and
//! three equations with no closed form.  Solutions may not exist at all for
//! tight lengths.  A damped multi-start Newton search is used; completeness
//! is checked against reference solution counts rather than guaranteed.

use crate::biarc::{HermiteData, SignBranch};
use crate::cpoly::chi;
use crate::error::{Error, Result};
use crate::phcurve::{PHSegment7, PreimageCubic};
use crate::real::Real;

/// A single-curve interpolation problem: Hermite data plus the tangent-ratio
/// parameter λ > 0 (the endpoint-speed coupling |α₁| = λ|α₀|).
#[derive(Clone, Copy, Debug)]
pub struct SinglePHProblem {
    pub data: HermiteData<f64>,
    pub lambda: f64,
}

impl SinglePHProblem {
    pub fn new(data: HermiteData<f64>, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidInput {
                reason: format!("lambda must be positive, got {lambda}"),
            });
        }
        Ok(SinglePHProblem { data, lambda })
    }
}

/// One interpolant found by the solver.
#[derive(Clone, Debug)]
pub struct SinglePHSolution {
    /// The curve, parameterized over [0, 1] with scale 1.
    pub segment: PHSegment7<f64>,
    pub alpha0: f64,
    pub beta0: f64,
    pub beta1: f64,
    /// Sign branch of α₁ = ±λα₀.
    pub branch: SignBranch,
    /// Final residual norm of the endpoint + length system.
    pub residual: f64,
    /// Parametric bending energy ∫₀¹ κ² dt.
    pub energy: f64,
}

/// Preimage coefficients of the full-interval curve.  The middle
/// coefficients use divisor 6 (versus 12 for the halved construction).
pub fn single_preimage<T: Real>(
    data: &HermiteData<T>,
    alpha0: T,
    alpha1: T,
    beta0: T,
    beta1: T,
) -> Result<PreimageCubic<T>> {
    if alpha0 == T::ZERO || alpha1 == T::ZERO {
        return Err(Error::DegeneratePreimage);
    }
    let six = T::from_i32(6);
    let n0 = data.t0.mul_i();
    let n1 = data.t1.mul_i();
    let w0 = chi(data.t0) * alpha0;
    let a0sq = alpha0 * alpha0;
    let w1 = (data.t0 * (a0sq + beta0 / six) + n0 * (data.k0 * a0sq * a0sq / six)) / w0;
    let w3 = chi(data.t1) * alpha1;
    let a1sq = alpha1 * alpha1;
    let w2 = (data.t1 * (a1sq - beta1 / six) - n1 * (data.k1 * a1sq * a1sq / six)) / w3;
    Ok(PreimageCubic::new(w0, w1, w2, w3))
}

/// The three scalar equations in the scaled form
/// 10(w₀²+w₃²) + 6(w₁²+w₂²) + 10(w₀w₁+w₂w₃) + w₀w₃ + 4(w₀w₂+w₁w₃) + 9w₁w₂ = 70ΔP₀
/// (complex) and its Hermitian counterpart equal to 70L (real).
pub(crate) fn residual_core<T: Real>(
    data: &HermiteData<T>,
    lambda: T,
    branch: SignBranch,
    alpha0: T,
    beta0: T,
    beta1: T,
) -> Result<[T; 3]> {
    let alpha1 = T::from_f64(branch.sign()) * lambda * alpha0;
    let w = single_preimage(data, alpha0, alpha1, beta0, beta1)?;
    let [w0, w1, w2, w3] = w.w;

    let c10 = T::from_i32(10);
    let c6 = T::from_i32(6);
    let c4 = T::from_i32(4);
    let c9 = T::from_i32(9);
    let c70 = T::from_i32(70);
    let end = (w0 * w0 + w3 * w3) * c10
        + (w1 * w1 + w2 * w2) * c6
        + (w0 * w1 + w2 * w3) * c10
        + w0 * w3
        + (w0 * w2 + w1 * w3) * c4
        + w1 * w2 * c9
        - data.delta() * c70;
    let len = (w0.norm_sqr() + w3.norm_sqr()) * c10
        + (w1.norm_sqr() + w2.norm_sqr()) * c6
        + (w0.dot(w1) + w2.dot(w3)) * c10
        + w0.dot(w3)
        + (w0.dot(w2) + w1.dot(w3)) * c4
        + w1.dot(w2) * c9
        - data.length * c70;
    Ok([end.re, end.im, len])
}

/// Endpoint (2 reals) and length (1 real) residuals at the given parameters.
pub fn residual_system(
    prob: &SinglePHProblem,
    branch: SignBranch,
    alpha0: f64,
    beta0: f64,
    beta1: f64,
) -> Result<[f64; 3]> {
    residual_core(&prob.data, prob.lambda, branch, alpha0, beta0, beta1)
}

fn norm3(f: &[f64; 3]) -> f64 {
    (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt()
}

/// Solves J·dx = −f for a 3×3 system by Gaussian elimination with partial
/// pivoting.  Returns None when the Jacobian is numerically singular.
fn solve3<T: Real>(j: &[[T; 3]; 3], f: &[T; 3]) -> Option<[T; 3]> {
    let mut a = [[T::ZERO; 4]; 3];
    for r in 0..3 {
        a[r][..3].copy_from_slice(&j[r]);
        a[r][3] = -f[r];
    }
    for col in 0..3 {
        let mut piv = col;
        for r in col + 1..3 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs().to_f64() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..3 {
            let m = a[r][col] / a[col][col];
            for k in col..4 {
                a[r][k] = a[r][k] - m * a[col][k];
            }
        }
    }
    let mut x = [T::ZERO; 3];
    for r in (0..3).rev() {
        let mut acc = a[r][3];
        for k in r + 1..3 {
            acc = acc - a[r][k] * x[k];
        }
        x[r] = acc / a[r][r];
    }
    if x.iter().all(|v| v.to_f64().is_finite()) {
        Some(x)
    } else {
        None
    }
}

/// Newton-polishes a solution triple (α₀, β₀, β₁) in the scalar type `T`
/// from an `f64`-accurate seed; used to push solutions to double-double
/// accuracy before building high-precision segments.
pub fn refine_single<T: Real>(
    data: &HermiteData<T>,
    lambda: T,
    branch: SignBranch,
    seed: [T; 3],
    h_rel: T,
    iters: usize,
) -> [T; 3] {
    let eval = |x: &[T; 3]| {
        residual_core(data, lambda, branch, x[0], x[1], x[2]).expect("nonzero alpha in refine")
    };
    let mut x = seed;
    for _ in 0..iters {
        let f = eval(&x);
        let mut jac = [[T::ZERO; 3]; 3];
        // Step sizes follow the dominant component α₀ rather than each
        // column's own magnitude: β₀, β₁ shrink toward zero on short spans
        // and a step proportional to them would drown the difference
        // quotient in rounding noise.
        let scale = x[0].abs().max(x[1].abs()).max(x[2].abs());
        for col in 0..3 {
            let mut h = h_rel * scale;
            if h == T::ZERO {
                h = h_rel;
            }
            let mut xp = x;
            xp[col] = xp[col] + h;
            let mut xm = x;
            xm[col] = xm[col] - h;
            let (fp, fm) = (eval(&xp), eval(&xm));
            for row in 0..3 {
                jac[row][col] = (fp[row] - fm[row]) / (h + h);
            }
        }
        let Some(dx) = solve3(&jac, &f) else { break };
        for k in 0..3 {
            x[k] = x[k] + dx[k];
        }
    }
    x
}

/// One damped Newton run; returns the converged (α₀, β₀, β₁) or None.
fn newton_from(
    prob: &SinglePHProblem,
    branch: SignBranch,
    start: [f64; 3],
) -> Option<[f64; 3]> {
    let eval = |x: &[f64; 3]| -> Option<[f64; 3]> {
        if x[0] == 0.0 || !x.iter().all(|v| v.is_finite()) {
            return None;
        }
        residual_system(prob, branch, x[0], x[1], x[2]).ok()
    };

    let mut x = start;
    let mut f = eval(&x)?;
    for _ in 0..200 {
        let nf = norm3(&f);
        if nf < 1e-11 {
            return Some(x);
        }
        let mut jac = [[0.0f64; 3]; 3];
        for col in 0..3 {
            let h = 1e-7 * x[col].abs().max(1.0);
            let mut xp = x;
            xp[col] += h;
            let mut xm = x;
            xm[col] -= h;
            let (fp, fm) = (eval(&xp)?, eval(&xm)?);
            for row in 0..3 {
                jac[row][col] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        let dx = solve3(&jac, &f)?;
        let mut t = 1.0f64;
        let mut advanced = false;
        for _ in 0..40 {
            let xn = [x[0] + t * dx[0], x[1] + t * dx[1], x[2] + t * dx[2]];
            if let Some(fn_) = eval(&xn) {
                if fn_.iter().all(|v| v.is_finite()) && norm3(&fn_) < (1.0 - 1e-4 * t) * nf {
                    x = xn;
                    f = fn_;
                    advanced = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !advanced {
            return None;
        }
    }
    if norm3(&f) < 1e-9 {
        Some(x)
    } else {
        None
    }
}

/// Multi-start search over a deterministic grid.
///
/// Starts: α₀ ∈ {±0.25, ±0.5, …, ±4}·√L and β₀, β₁ ∈ {0, ±8, ±24, ±72}·|ΔP₀|
/// on both sign branches.  Converged parameter triples are canonicalized to
/// α₀ > 0 (the preimage sign symmetry w → −w gives the same curve) and
/// deduplicated at distance 1e-6.  Results are sorted by (branch, α₀, β₀, β₁)
/// with the + branch first.  The list may be empty: for too-short lengths no
/// single-curve interpolant exists.
pub fn solve(prob: &SinglePHProblem) -> Vec<SinglePHSolution> {
    let alpha_unit = prob.data.length.sqrt();
    let beta_unit = prob.data.chord();
    let beta_grid = [0.0, -8.0, 8.0, -24.0, 24.0, -72.0, 72.0];

    let mut out = Vec::new();
    for branch in SignBranch::ALL {
        let mut found: Vec<[f64; 3]> = Vec::new();
        for ka in 1..=16 {
            for sa in [1.0, -1.0] {
                let ga = sa * 0.25 * ka as f64;
                for gb0 in beta_grid {
                    for gb1 in beta_grid {
                        let start =
                            [ga * alpha_unit, gb0 * beta_unit, gb1 * beta_unit];
                        let Some(mut sol) = newton_from(prob, branch, start) else {
                            continue;
                        };
                        if sol[0] < 0.0 {
                            sol[0] = -sol[0];
                        }
                        let dup = found.iter().any(|c| {
                            let d = [sol[0] - c[0], sol[1] - c[1], sol[2] - c[2]];
                            (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() < 1e-6
                        });
                        if !dup {
                            found.push(sol);
                        }
                    }
                }
            }
        }
        for [a0, b0, b1] in found {
            let alpha1 = branch.sign() * prob.lambda * a0;
            let Ok(pre) = single_preimage(&prob.data, a0, alpha1, b0, b1) else {
                continue;
            };
            let Ok(segment) = PHSegment7::new(pre, prob.data.p0, 1.0) else {
                continue;
            };
            let residual = residual_system(prob, branch, a0, b0, b1)
                .map(|f| norm3(&f))
                .unwrap_or(f64::INFINITY);
            let energy = segment.bending_energy().unwrap_or(f64::INFINITY);
            out.push(SinglePHSolution {
                segment,
                alpha0: a0,
                beta0: b0,
                beta1: b1,
                branch,
                residual,
                energy,
            });
        }
    }
    out.sort_by(|a, b| {
        let ka = (a.branch != SignBranch::PlusPlus, a.alpha0, a.beta0, a.beta1);
        let kb = (b.branch != SignBranch::PlusPlus, b.alpha0, b.beta0, b.beta1);
        ka.partial_cmp(&kb).unwrap()
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpoly::Complex;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn unit(theta: f64) -> Complex<f64> {
        c(theta.cos(), theta.sin())
    }

    fn problem(theta1: f64, k1: f64, length: f64) -> SinglePHProblem {
        let data = HermiteData::new(
            c(0.0, 0.0),
            c(1.0, 0.0),
            unit(-PI / 4.0),
            unit(theta1),
            1.0,
            k1,
            length,
        )
        .unwrap();
        SinglePHProblem::new(data, 1.0).unwrap()
    }

    #[test]
    fn straight_line_is_exact() {
        // w ≡ 1 solves the nearly-degenerate straight configuration.
        let data = HermiteData::new(
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            0.0,
            0.0,
            1.0 + 1e-14,
        )
        .unwrap();
        let prob = SinglePHProblem::new(data, 1.0).unwrap();
        let f = residual_system(&prob, SignBranch::PlusPlus, 1.0, 0.0, 0.0).unwrap();
        assert!(norm3(&f) < 1e-11, "residuals {f:?}");
    }

    #[test]
    fn two_solutions_with_reference_parameters() {
        let sols = solve(&problem(-PI / 8.0, -1.0, 1.1));
        assert_eq!(sols.len(), 2, "solutions: {sols:?}");

        // (α₀, β₀, β₁, E) for both, ordered by α₀.
        let want = [
            (1.428515, -24.044894, -5.655708, 184.113),
            (1.519694, -16.938758, 4.065591, 14.4481),
        ];
        for (s, w) in sols.iter().zip(want) {
            assert_eq!(s.branch, SignBranch::PlusPlus);
            assert!((s.alpha0 - w.0).abs() < 2e-6, "alpha {}", s.alpha0);
            assert!((s.beta0 - w.1).abs() < 1e-4);
            assert!((s.beta1 - w.2).abs() < 1e-4);
            assert!((s.energy - w.3).abs() < 1e-3 * w.3);
        }
    }

    #[test]
    fn short_length_has_no_solution() {
        assert!(solve(&problem(-PI / 8.0, -1.0, 1.05)).is_empty());
    }

    #[test]
    fn four_solutions_split_across_branches() {
        let sols = solve(&problem(PI / 8.0, 1.0, 1.1));
        assert_eq!(sols.len(), 4, "solutions: {sols:?}");
        let plus: Vec<_> = sols.iter().filter(|s| s.branch == SignBranch::PlusPlus).collect();
        let minus: Vec<_> = sols.iter().filter(|s| s.branch == SignBranch::PlusMinus).collect();
        assert_eq!(plus.len(), 2);
        assert_eq!(minus.len(), 2);

        let want = [
            (1.785589, 1.02189e6),
            (1.949422, 183.06),
            (1.306013, 2.06226e6),
            (1.343524, 4.46632e5),
        ];
        for (s, (alpha, energy)) in sols.iter().zip(want) {
            assert!((s.alpha0 - alpha).abs() < 2e-6, "alpha {}", s.alpha0);
            assert!((s.energy - energy).abs() < 1e-3 * energy, "energy {}", s.energy);
        }
    }

    #[test]
    fn solutions_reproduce_data() {
        let prob = problem(-PI / 8.0, -1.0, 1.1);
        for s in solve(&prob) {
            assert!(s.residual <= 1e-9 * (1.0 + prob.data.length));
            assert!(
                (s.segment.arc_length() - prob.data.length).abs()
                    <= 1e-9 * prob.data.length
            );
            let at0 = s.segment.evaluate(0.0).unwrap();
            let at1 = s.segment.evaluate(1.0).unwrap();
            assert!((at0.point - prob.data.p0).abs() < 1e-12);
            assert!((at1.point - prob.data.p1).abs() < 1e-10);
            assert!((at0.unit_tangent - prob.data.t0).abs() < 1e-10);
            assert!((at1.unit_tangent - prob.data.t1).abs() < 1e-10);
            assert!((at0.signed_curvature - prob.data.k0).abs() < 1e-9 * 2.0);
            assert!((at1.signed_curvature - prob.data.k1).abs() < 1e-9 * 2.0);
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let prob = problem(PI / 8.0, 1.0, 1.1);
        let a = solve(&prob);
        let b = solve(&prob);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.alpha0.to_bits(), y.alpha0.to_bits());
            assert_eq!(x.beta0.to_bits(), y.beta0.to_bits());
            assert_eq!(x.beta1.to_bits(), y.beta1.to_bits());
        }
    }
}
