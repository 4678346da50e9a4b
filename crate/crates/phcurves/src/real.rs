//! Scalar abstraction used by the geometric kernel.
//!
//! Everything geometric is written against [`Real`], instantiated either with
//! plain `f64` or with the double-double type [`Dd`] (roughly 32 significant
//! decimal digits). The extended precision is needed by the convergence
//! studies: the finest rows of the order tables sit at errors near 1e-18,
//! far below what an f64 pipeline can resolve.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Minimal scalar interface shared by `f64` and [`Dd`].
pub trait Real:
    Copy
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn sin_cos(self) -> (Self, Self);

    fn from_i32(k: i32) -> Self {
        Self::from_f64(k as f64)
    }
    fn max(self, other: Self) -> Self {
        if self > other {
            self
        } else {
            other
        }
    }
}

impl Real for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }
}

/// Unevaluated sum of two doubles, `hi + lo` with `|lo| <= ulp(hi)/2`.
///
/// Classic Dekker/Bailey double-double arithmetic built on error-free
/// transforms (`two_sum`, FMA-based `two_prod`). Gives ~106 bits of
/// significand, which is plenty of headroom for curve-vs-reference
/// differences down to 1e-20.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

/// Requires |a| >= |b| (or a == 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: 1.5707963267948966,
        lo: 6.123233995736766e-17,
    };
    pub const LN_2: Dd = Dd {
        hi: 0.6931471805599453,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Exact product by a power of two.
    #[inline]
    pub fn mul_pwr2(self, k: f64) -> Dd {
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "sqrt of negative double-double");
        // Karp's trick: one Newton step on the f64 estimate, with the residual
        // computed in full precision.
        let y = self.hi.sqrt();
        let ydd = Dd::from_f64(y);
        let r = self - ydd * ydd;
        ydd + Dd::from_f64(r.hi / (2.0 * y))
    }

    /// `exp(x) - 1` computed by a direct Taylor series. Accurate only for
    /// |x| <= ~0.1 where the series converges fast and without cancellation.
    fn expm1_taylor(self) -> Dd {
        let mut term = self;
        let mut sum = self;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * self / Dd::from_f64(n);
            let next = sum + term;
            if next == sum {
                return sum;
            }
            sum = next;
        }
    }

    pub fn exp(self) -> Dd {
        // exp(x) = 2^k * exp(r), r = x - k ln2, then |r| <= ln2/2.
        // exp(r) via (1 + s)^(2^9) with s = expm1(r / 512).
        let k = (self.hi / Dd::LN_2.hi).round();
        let r = self - Dd::LN_2 * Dd::from_f64(k);
        let mut s = r.mul_pwr2(1.0 / 512.0).expm1_taylor();
        for _ in 0..9 {
            // (1+s)^2 - 1 = 2s + s^2
            s = s.mul_pwr2(2.0) + s * s;
        }
        let e = s + Dd::ONE;
        let scale = f64::powi(2.0, k as i32);
        Dd {
            hi: e.hi * scale,
            lo: e.lo * scale,
        }
    }

    pub fn exp_m1(self) -> Dd {
        if self.hi.abs() <= 0.1 {
            self.expm1_taylor()
        } else {
            self.exp() - Dd::ONE
        }
    }

    /// Taylor sine on |r| <= pi/4.
    fn sin_taylor(self) -> Dd {
        let x2 = self * self;
        let mut term = self;
        let mut sum = self;
        let mut n = 1.0;
        loop {
            term = -term * x2 / Dd::from_f64((n + 1.0) * (n + 2.0));
            n += 2.0;
            let next = sum + term;
            if next == sum {
                return sum;
            }
            sum = next;
        }
    }

    /// Taylor cosine on |r| <= pi/4.
    fn cos_taylor(self) -> Dd {
        let x2 = self * self;
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        let mut n = 0.0;
        loop {
            term = -term * x2 / Dd::from_f64((n + 1.0) * (n + 2.0));
            n += 2.0;
            let next = sum + term;
            if next == sum {
                return sum;
            }
            sum = next;
        }
    }

    /// Simultaneous sine and cosine. Argument reduction by pi/2 quadrants;
    /// adequate for the moderate arguments used here (|x| up to ~40).
    pub fn sin_cos(self) -> (Dd, Dd) {
        let k = (self.hi / Dd::FRAC_PI_2.hi).round();
        let r = self - Dd::FRAC_PI_2 * Dd::from_f64(k);
        let (s, c) = (r.sin_taylor(), r.cos_taylor());
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        // Three f64 quotient digits with full-precision residuals.
        let q1 = self.hi / rhs.hi;
        let r1 = self - rhs * Dd::from_f64(q1);
        let q2 = r1.hi / rhs.hi;
        let r2 = r1 - rhs * Dd::from_f64(q2);
        let q3 = r2.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl Real for Dd {
    const ZERO: Self = Dd::ZERO;
    const ONE: Self = Dd::ONE;

    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn exp(self) -> Self {
        Dd::exp(self)
    }
    fn exp_m1(self) -> Self {
        Dd::exp_m1(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        Dd::sin_cos(self)
    }
}
