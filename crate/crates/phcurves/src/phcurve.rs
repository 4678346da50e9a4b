//! Degree-7 planar PH segments built from a cubic preimage.
//!
//! A cubic w(t) in Bernstein form induces the hodograph r′(t) = w²(t), a
//! degree-6 polynomial whose coefficients come from a fixed convolution; the
//! curve itself is the degree-7 Bézier obtained by integration.  The squared
//! structure makes the parametric speed σ = |w|² a polynomial, so arc length
//! is exact (a coefficient mean) and the unit tangent, normal and signed
//! curvature are rational in t.
//!
//! A segment also carries a `scale`: the width of the parameter interval it
//! occupies inside a composite curve (1 when standalone, ½ for each half of a
//! two-segment construction).  Coefficients are never rescaled; `scale` enters
//! only the integration step and the derivative/curvature formulas.

use crate::cpoly::{BernsteinPoly, Complex};
use crate::error::{Error, Result};
use crate::quad;
use crate::real::Real;

/// Bernstein coefficients w₀..w₃ of the preimage cubic w(t).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreimageCubic<T = f64> {
    pub w: [Complex<T>; 4],
}

impl<T: Real> PreimageCubic<T> {
    pub fn new(w0: Complex<T>, w1: Complex<T>, w2: Complex<T>, w3: Complex<T>) -> Self {
        PreimageCubic { w: [w0, w1, w2, w3] }
    }

    pub fn as_poly(&self) -> BernsteinPoly<T> {
        BernsteinPoly::new(self.w.to_vec())
    }

    /// w′(t) as a quadratic Bernstein polynomial.
    pub fn derivative_poly(&self) -> BernsteinPoly<T> {
        let three = T::from_i32(3);
        BernsteinPoly::new(vec![
            (self.w[1] - self.w[0]) * three,
            (self.w[2] - self.w[1]) * three,
            (self.w[3] - self.w[2]) * three,
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().all(|z| z.re == T::ZERO && z.im == T::ZERO)
    }

    pub fn to_f64(&self) -> PreimageCubic<f64> {
        PreimageCubic {
            w: [
                self.w[0].to_f64(),
                self.w[1].to_f64(),
                self.w[2].to_f64(),
                self.w[3].to_f64(),
            ],
        }
    }
}

/// The seven hodograph coefficients h₀..h₆ of w²(t) in closed form.
pub fn hodograph<T: Real>(pre: &PreimageCubic<T>) -> BernsteinPoly<T> {
    let [w0, w1, w2, w3] = pre.w;
    let fifth = T::ONE / T::from_i32(5);
    let tenth = T::ONE / T::from_i32(10);
    let two = T::from_i32(2);
    let three = T::from_i32(3);
    let nine = T::from_i32(9);
    BernsteinPoly::new(vec![
        w0 * w0,
        w0 * w1,
        (w0 * w2 * two + w1 * w1 * three) * fifth,
        (w0 * w3 + w1 * w2 * nine) * tenth,
        (w1 * w3 * two + w2 * w2 * three) * fifth,
        w2 * w3,
        w3 * w3,
    ])
}

/// Pointwise kinematic data of a segment at one parameter value.
#[derive(Clone, Copy, Debug)]
pub struct CurveSample<T = f64> {
    pub point: Complex<T>,
    pub unit_tangent: Complex<T>,
    /// Counterclockwise normal, i · unit_tangent.
    pub normal: Complex<T>,
    pub signed_curvature: T,
    /// |dr/dt| with respect to the segment's own parameter on [0, 1].
    pub speed: T,
}

/// A degree-7 PH segment: preimage, integration constant, interval width.
#[derive(Clone, Debug)]
pub struct PHSegment7<T = f64> {
    preimage: PreimageCubic<T>,
    start: Complex<T>,
    scale: T,
    hodo: BernsteinPoly<T>,
    sigma: Vec<T>,
    control: BernsteinPoly<T>,
    sigma_coeff_max: T,
}

impl<T: Real> PHSegment7<T> {
    pub fn new(preimage: PreimageCubic<T>, start: Complex<T>, scale: T) -> Result<Self> {
        if preimage.is_zero() {
            return Err(Error::DegeneratePreimage);
        }
        if !(scale > T::ZERO) {
            return Err(Error::InvalidInput {
                reason: format!("segment scale must be positive, got {}", scale.to_f64()),
            });
        }
        let hodo = hodograph(&preimage);
        let wp = preimage.as_poly();
        let sigma = wp.hermitian_product(&wp);
        let mut sigma_coeff_max = T::ZERO;
        for s in &sigma {
            sigma_coeff_max = Real::max(sigma_coeff_max, s.abs());
        }
        let step = scale / T::from_i32(7);
        let mut control = Vec::with_capacity(8);
        control.push(start);
        for i in 0..7 {
            let prev = control[i];
            control.push(prev + hodo.coeffs()[i] * step);
        }
        Ok(PHSegment7 {
            preimage,
            start,
            scale,
            hodo,
            sigma,
            control: BernsteinPoly::new(control),
            sigma_coeff_max,
        })
    }

    pub fn preimage(&self) -> &PreimageCubic<T> {
        &self.preimage
    }

    pub fn start(&self) -> Complex<T> {
        self.start
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn hodograph(&self) -> &BernsteinPoly<T> {
        &self.hodo
    }

    /// The eight Bézier control points p₀..p₇.
    pub fn control_points(&self) -> &[Complex<T>] {
        self.control.coeffs()
    }

    /// Bernstein coefficients σ₀..σ₆ of the parametric speed |w(t)|².
    pub fn sigma_coeffs(&self) -> &[T] {
        &self.sigma
    }

    /// Exact arc length: scale · (σ₀ + … + σ₆)/7.
    pub fn arc_length(&self) -> T {
        let mut sum = T::ZERO;
        for s in &self.sigma {
            sum = sum + *s;
        }
        sum * self.scale / T::from_i32(7)
    }

    /// Threshold below which the parametric speed counts as vanishing.
    fn cusp_eps(&self) -> T {
        T::from_f64(1e-12) * self.sigma_coeff_max
    }

    /// Curve point r(t).
    pub fn point(&self, t: T) -> Result<Complex<T>> {
        self.control.eval(t)
    }

    /// dr/dt = scale · w²(t) with respect to the segment's own parameter.
    pub fn derivative1(&self, t: T) -> Result<Complex<T>> {
        let w = self.preimage.as_poly().eval(t)?;
        Ok(w * w * self.scale)
    }

    /// d²r/dt² = scale · 2 w(t) w′(t).
    pub fn derivative2(&self, t: T) -> Result<Complex<T>> {
        let w = self.preimage.as_poly().eval(t)?;
        let wp = self.preimage.derivative_poly().eval(t)?;
        Ok(w * wp * (self.scale + self.scale))
    }

    /// d³r/dt³ = scale · 2 (w′² + w w″).
    pub fn derivative3(&self, t: T) -> Result<Complex<T>> {
        let w = self.preimage.as_poly().eval(t)?;
        let wp = self.preimage.derivative_poly().eval(t)?;
        let six = T::from_i32(6);
        let [w0, w1, w2, w3] = self.preimage.w;
        let wpp = BernsteinPoly::new(vec![
            (w2 - w1 - w1 + w0) * six,
            (w3 - w2 - w2 + w1) * six,
        ])
        .de_casteljau(t);
        Ok((wp * wp + w * wpp) * (self.scale + self.scale))
    }

    /// Point, frame, curvature and speed at `t`.
    ///
    /// Errors with [`Error::Cusp`] when σ(t) falls below 1e-12 · max σᵢ, where
    /// the tangent direction is numerically meaningless.
    pub fn evaluate(&self, t: T) -> Result<CurveSample<T>> {
        let point = self.control.eval(t)?;
        let w = self.preimage.as_poly().de_casteljau(t);
        let wp = self.preimage.derivative_poly().de_casteljau(t);
        let sigma = w.norm_sqr();
        if sigma <= self.cusp_eps() {
            return Err(Error::Cusp { t: t.to_f64() });
        }
        let unit_tangent = w * w / sigma;
        let normal = unit_tangent.mul_i();
        let signed_curvature = (T::ONE + T::ONE) * w.cross(wp) / (self.scale * sigma * sigma);
        Ok(CurveSample {
            point,
            unit_tangent,
            normal,
            signed_curvature,
            speed: self.scale * sigma,
        })
    }
}

impl PHSegment7<f64> {
    /// Bending energy ∫ κ²(t) dt over the segment's share of the composite
    /// parameter interval: (1/scale) ∫₀¹ 4·Im(w̄ w′)²/σ⁴ dt.
    ///
    /// Errors with [`Error::Cusp`] when the speed vanishes anywhere on [0, 1];
    /// otherwise returns the converged (or best-effort, for near-cusp data)
    /// adaptive quadrature value.
    pub fn bending_energy(&self) -> Result<f64> {
        let wpoly = self.preimage.as_poly();
        let dpoly = self.preimage.derivative_poly();
        let eps = self.cusp_eps();
        let mut cusp_at: Option<f64> = None;
        let value = quad::integrate(
            |t| {
                let w = wpoly.de_casteljau(t);
                let wp = dpoly.de_casteljau(t);
                let sigma = w.norm_sqr();
                if sigma <= eps {
                    cusp_at = Some(t);
                    return 0.0;
                }
                let num = w.cross(wp);
                4.0 * num * num / (sigma * sigma * sigma * sigma)
            },
            0.0,
            1.0,
            1e-10,
        );
        match cusp_at {
            Some(t) => Err(Error::Cusp { t }),
            None => Ok(value / self.scale),
        }
    }
}
