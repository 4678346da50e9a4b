//! Complex arithmetic and complex-coefficient Bernstein polynomials.
//!
//! Complex numbers double as points/vectors in the plane, so a single type
//! carries positions, tangents, hodograph coefficients and preimage
//! coefficients.  Polynomials are stored by their Bernstein coefficients over
//! [0, 1]; callers that work on subintervals do their own reparameterization.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::real::Real;

/// A complex number over any [`Real`] scalar, identified with a point or
/// vector in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Complex<T = f64> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Complex<T> {
    pub const fn new(re: T, im: T) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex { re: T::ZERO, im: T::ZERO }
    }

    pub fn one() -> Self {
        Complex { re: T::ONE, im: T::ZERO }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Complex { re: T::ZERO, im: T::ONE }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Complex { re: T::from_f64(re), im: T::from_f64(im) }
    }

    pub fn conj(self) -> Self {
        Complex { re: self.re, im: -self.im }
    }

    /// |z|².
    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    /// |z|.
    pub fn abs(self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Multiplication by i (rotation by 90 degrees).
    pub fn mul_i(self) -> Self {
        Complex { re: -self.im, im: self.re }
    }

    /// Re(self · conj(rhs)), the Euclidean inner product of the two vectors.
    pub fn dot(self, rhs: Self) -> T {
        self.re * rhs.re + self.im * rhs.im
    }

    /// Im(conj(self) · rhs), the planar cross product.
    pub fn cross(self, rhs: Self) -> T {
        self.re * rhs.im - self.im * rhs.re
    }

    pub fn to_f64(self) -> Complex<f64> {
        Complex { re: self.re.to_f64(), im: self.im.to_f64() }
    }

    pub fn is_finite(self) -> bool {
        self.re.to_f64().is_finite() && self.im.to_f64().is_finite()
    }
}

impl<T: Real> Add for Complex<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Complex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Real> Sub for Complex<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Complex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Real> Mul for Complex<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Complex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

/// Scalar scaling: `z * s`.
impl<T: Real> Mul<T> for Complex<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Complex { re: self.re * s, im: self.im * s }
    }
}

impl<T: Real> Div for Complex<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let d = rhs.norm_sqr();
        let n = self * rhs.conj();
        Complex { re: n.re / d, im: n.im / d }
    }
}

/// Scalar division: `z / s`.
impl<T: Real> Div<T> for Complex<T> {
    type Output = Self;
    fn div(self, s: T) -> Self {
        Complex { re: self.re / s, im: self.im / s }
    }
}

impl<T: Real> Neg for Complex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex { re: -self.re, im: -self.im }
    }
}

/// C(n, k) as an exact small integer.  Degrees in this crate never exceed 14,
/// so the result always fits well inside an i64 mantissa.
pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i64 / (j + 1) as i64;
    }
    acc
}

/// A polynomial in Bernstein form over [0, 1] with complex coefficients.
/// Degree is the coefficient count minus one.
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinPoly<T = f64> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> BernsteinPoly<T> {
    /// Builds a polynomial from its Bernstein coefficients b₀..b_m.
    ///
    /// Panics if `coeffs` is empty (a polynomial has degree ≥ 0).
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        assert!(!coeffs.is_empty(), "a Bernstein polynomial needs at least one coefficient");
        BernsteinPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Evaluates at `t` by de Casteljau's convex-combination scheme.
    ///
    /// Endpoints are exact: t=0 returns b₀ and t=1 returns b_m bitwise.
    pub fn eval(&self, t: T) -> Result<Complex<T>> {
        if t < T::ZERO || t > T::ONE {
            return Err(Error::ParamOutOfRange { t: t.to_f64() });
        }
        Ok(self.de_casteljau(t))
    }

    pub(crate) fn de_casteljau(&self, t: T) -> Complex<T> {
        let s = T::ONE - t;
        let mut work = self.coeffs.clone();
        for round in (1..work.len()).rev() {
            for i in 0..round {
                work[i] = work[i] * s + work[i + 1] * t;
            }
        }
        work[0]
    }

    /// Bernstein coefficients of the product `self * rhs`, degree m + n.
    pub fn product(&self, rhs: &Self) -> Self {
        let m = self.degree();
        let n = rhs.degree();
        let mut out = vec![Complex::zero(); m + n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex::zero();
            let lo = k.saturating_sub(n);
            let hi = k.min(m);
            for i in lo..=hi {
                let weight = T::from_i32((binomial(m, i) * binomial(n, k - i)) as i32);
                acc = acc + self.coeffs[i] * rhs.coeffs[k - i] * weight;
            }
            *slot = acc / T::from_i32(binomial(m + n, k) as i32);
        }
        BernsteinPoly { coeffs: out }
    }

    /// Bernstein coefficients of `self²`, degree 2m.
    pub fn square(&self) -> Self {
        self.product(self)
    }

    /// Real Bernstein coefficients of Re(self(t) · conj(rhs(t))), degree m + n.
    ///
    /// With `rhs = self` this is |self(t)|², the parametric speed when `self`
    /// is a hodograph preimage.
    pub fn hermitian_product(&self, rhs: &Self) -> Vec<T> {
        let m = self.degree();
        let n = rhs.degree();
        let mut out = vec![T::ZERO; m + n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = T::ZERO;
            let lo = k.saturating_sub(n);
            let hi = k.min(m);
            for i in lo..=hi {
                let weight = T::from_i32((binomial(m, i) * binomial(n, k - i)) as i32);
                acc = acc + self.coeffs[i].dot(rhs.coeffs[k - i]) * weight;
            }
            *slot = acc / T::from_i32(binomial(m + n, k) as i32);
        }
        out
    }
}

/// The principal square root χ(c), with χ(c)² = c and Re χ(c) ≥ 0.
///
/// Uses the conjugate-stable branch: the half-angle formula subtracts |c| and
/// Re c only when they carry the same sign, so no catastrophic cancellation
/// occurs near the negative real axis.  Conventions at the edges:
/// χ(0) = 0, and χ of a negative real is +i·√|c|.
pub fn chi<T: Real>(c: Complex<T>) -> Complex<T> {
    let r = c.abs();
    if r == T::ZERO {
        return Complex::zero();
    }
    let half = T::from_f64(0.5);
    if c.re >= T::ZERO {
        let a = ((r + c.re) * half).sqrt();
        let b = c.im / (a + a);
        Complex::new(a, b)
    } else {
        let mag = ((r - c.re) * half).sqrt();
        if c.im == T::ZERO {
            // Negative real axis: pick the +i root.
            return Complex::new(T::ZERO, mag);
        }
        let b = if c.im < T::ZERO { -mag } else { mag };
        let a = c.im / (b + b);
        Complex::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Dd;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn complex_field_ops() {
        let a = c(2.0, 1.0);
        let b = c(-1.0, 3.0);
        assert_eq!(a * b, c(-5.0, 5.0));
        assert_eq!(a + b, c(1.0, 4.0));
        assert_eq!(a - b, c(3.0, -2.0));
        assert_eq!(a.conj(), c(2.0, -1.0));
        assert_eq!(a.norm_sqr(), 5.0);
        assert_eq!(a.mul_i(), c(-1.0, 2.0));
        let q = (a * b) / b;
        assert!(close(q, a, 1e-15));
        assert_eq!(a.dot(b), 1.0);
        assert_eq!(a.cross(b), 7.0);
    }

    #[test]
    fn eval_constant_and_linear() {
        let p = BernsteinPoly::new(vec![c(1.0, 0.0)]);
        assert_eq!(p.eval(0.37).unwrap(), c(1.0, 0.0));

        let lin = BernsteinPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(lin.eval(0.25).unwrap(), c(0.25, 0.0));
    }

    #[test]
    fn eval_quadratic_midpoint() {
        // (1-t)²·1 + 2t(1-t)·i + t²·(-1) at t = 1/2.
        let p = BernsteinPoly::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]);
        assert_eq!(p.eval(0.5).unwrap(), c(0.0, 0.5));
    }

    #[test]
    fn eval_endpoints_are_bit_exact() {
        let p = BernsteinPoly::new(vec![
            c(0.123456789, -3.3),
            c(7.5, 0.1),
            c(-2.25, 9.0),
            c(0.625, -0.875),
        ]);
        assert_eq!(p.eval(0.0).unwrap(), p.coeffs()[0]);
        assert_eq!(p.eval(1.0).unwrap(), p.coeffs()[3]);
    }

    #[test]
    fn eval_rejects_outside_domain() {
        let p = BernsteinPoly::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(p.eval(-0.001).is_err());
        assert!(p.eval(1.001).is_err());
    }

    #[test]
    fn square_constant() {
        let p = BernsteinPoly::new(vec![c(2.0, 1.0)]);
        let sq = p.square();
        assert_eq!(sq.coeffs(), &[c(3.0, 4.0)]);
    }

    #[test]
    fn square_basis_cubic() {
        // w(t) = (1-t)³ squares to (1-t)⁶, a single B₀⁶ term.
        let p = BernsteinPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let sq = p.square();
        assert_eq!(sq.degree(), 6);
        assert_eq!(sq.coeffs()[0], c(1.0, 0.0));
        for k in 1..=6 {
            assert_eq!(sq.coeffs()[k], c(0.0, 0.0));
        }
    }

    #[test]
    fn square_cubic_matches_sampled_values() {
        let p = BernsteinPoly::new(vec![c(1.2, -0.3), c(0.4, 0.9), c(-1.1, 0.2), c(0.7, 1.5)]);
        let sq = p.square();
        for j in 0..20 {
            // Chebyshev points of [0,1].
            let t = 0.5 - 0.5 * ((2.0 * j as f64 + 1.0) * std::f64::consts::PI / 40.0).cos();
            let lhs = sq.eval(t).unwrap();
            let rhs = p.eval(t).unwrap();
            assert!(close(lhs, rhs * rhs, 1e-13), "t = {t}");
        }
    }

    #[test]
    fn square_random_cubics() {
        let mut rng = StdRng::seed_from_u64(0x5eed_c0de);
        for _ in 0..50 {
            let p = BernsteinPoly::new(
                (0..4).map(|_| c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))).collect(),
            );
            let sq = p.square();
            for _ in 0..50 {
                let t: f64 = rng.gen_range(0.0..=1.0);
                let v = p.eval(t).unwrap();
                let err = (sq.eval(t).unwrap() - v * v).abs();
                assert!(err <= 1e-12 * (1.0 + v.norm_sqr()));
            }
        }
    }

    #[test]
    fn hermitian_product_examples() {
        let p = BernsteinPoly::new(vec![c(1.0, 1.0)]);
        assert_eq!(p.hermitian_product(&p), vec![2.0]);

        // (1-t)³ against t³: Re product is (1-t)³t³ = B₃⁶/20.
        let a = BernsteinPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let b = BernsteinPoly::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let h = a.hermitian_product(&b);
        assert_eq!(h.len(), 7);
        for (k, v) in h.iter().enumerate() {
            if k == 3 {
                assert!((v - 0.05).abs() < 1e-16);
            } else {
                assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn hermitian_self_matches_norm_squared() {
        let mut rng = StdRng::seed_from_u64(17);
        let p = BernsteinPoly::new(
            (0..4).map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))).collect(),
        );
        let sigma = BernsteinPoly::new(
            p.hermitian_product(&p).into_iter().map(|x| c(x, 0.0)).collect(),
        );
        for _ in 0..100 {
            let t: f64 = rng.gen_range(0.0..=1.0);
            let want = p.eval(t).unwrap().norm_sqr();
            let got = sigma.eval(t).unwrap().re;
            assert!((got - want).abs() <= 1e-12 * (1.0 + want));
            assert!(got >= -1e-13);
        }
    }

    #[test]
    fn chi_pinned_values() {
        assert_eq!(chi(c(1.0, 0.0)), c(1.0, 0.0));
        let r = chi(c(0.0, 1.0));
        let s = 0.5f64.sqrt();
        assert!(close(r, c(s, s), 2e-16));
        assert_eq!(chi(c(-4.0, 0.0)), c(0.0, 2.0));
        assert_eq!(chi(c(0.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn chi_square_roundtrip_and_branch() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..1000 {
            let mag = 10f64.powf(rng.gen_range(-6.0..6.0));
            let ang = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let v = c(mag * ang.cos(), mag * ang.sin());
            let root = chi(v);
            assert!(root.re >= 0.0, "Re χ({v:?}) = {}", root.re);
            let back = root * root;
            assert!((back - v).abs() <= 1e-13 * mag, "χ({v:?})² = {back:?}");
        }
        // Continuity across the positive real axis.
        let above = chi(c(4.0, 1e-12));
        let below = chi(c(4.0, -1e-12));
        assert!(close(above, below.conj(), 1e-16));
        assert!(close(above, c(2.0, 0.0), 1e-12));
    }

    #[test]
    fn chi_stable_near_negative_axis() {
        // Near the branch cut the naive half-angle formula cancels; the
        // conjugate form must keep full precision.
        let v = c(-1.0, 1e-10);
        let root = chi(v);
        assert!((root.im - 1.0).abs() < 1e-15);
        assert!((root.re - 5e-11).abs() < 1e-24);
        let back = root * root;
        assert!((back - v).abs() < 1e-15);
    }

    #[test]
    fn generic_scalar_compiles_and_agrees() {
        let p64 = BernsteinPoly::new(vec![c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0), c(0.0, 1.0)]);
        let pdd = BernsteinPoly::new(
            p64.coeffs()
                .iter()
                .map(|z| Complex::<Dd>::from_f64(z.re, z.im))
                .collect(),
        );
        let t = 0.3125; // exactly representable
        let v64 = p64.eval(t).unwrap();
        let vdd = pdd.eval(Dd::from_f64(t)).unwrap().to_f64();
        assert!((v64 - vdd).abs() < 1e-15);

        let h64 = p64.hermitian_product(&p64);
        let hdd = pdd.hermitian_product(&pdd);
        for (a, b) in h64.iter().zip(hdd.iter()) {
            assert!((a - b.to_f64()).abs() <= 1e-15 * (1.0 + a.abs()));
        }

        let root = chi(Complex::<Dd>::from_f64(-2.0, 0.5));
        let back = (root * root).to_f64();
        assert!(close(back, c(-2.0, 0.5), 1e-30));
    }
}
