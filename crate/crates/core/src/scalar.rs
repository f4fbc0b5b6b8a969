//! Coefficient arithmetic for the tensor engine.
//!
//! Two interchangeable scalar types back every computation:
//!
//! * [`Exact`] — complex numbers with rational real and imaginary parts
//!   (Gaussian rationals). All data of the fermionic toric code lives in
//!   {±1, ±i}, so the whole pipeline runs without rounding.
//! * [`Approx`] — complex `f64` with a comparison tolerance, for cocycles
//!   whose values are roots of unity of order other than 1, 2 or 4.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Default tolerance used by [`Scalar::approx_eq`] in floating mode.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// Common interface of the two coefficient fields.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn conj(&self) -> Self;
    /// Equality up to the mode's tolerance (exact equality in exact mode).
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
    /// `exp(2πi k/n)` when representable in this field.
    ///
    /// Exact mode only supports n ∈ {1, 2, 4}; other orders return `None`.
    fn root_of_unity(k: i64, n: i64) -> Option<Self>;
    /// Absolute deviation from `other`, as an `f64` (0.0 when equal in
    /// exact mode). Used for report output only.
    fn deviation(&self, other: &Self) -> f64;
}

/// Gaussian-rational scalar: `re + im·i` with arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exact {
    pub re: BigRational,
    pub im: BigRational,
}

impl Exact {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Exact { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Exact {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// Parse a rational from `"p/q"` or an integer string.
    pub fn rational_from_str(s: &str) -> Option<BigRational> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        } else {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let conv = |r: &BigRational| -> f64 {
            let n = r.numer();
            let d = r.denom();
            // Good enough for report output; exact comparisons never go
            // through f64.
            let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            nf / df
        };
        (conv(&self.re), conv(&self.im))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, rhs: Exact) -> Exact {
        Exact::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, rhs: Exact) -> Exact {
        Exact::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, rhs: Exact) -> Exact {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Exact::new(re, im)
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact::new(-self.re, -self.im)
    }
}

impl Scalar for Exact {
    fn zero() -> Self {
        Exact::from_ints(0, 0)
    }
    fn one() -> Self {
        Exact::from_ints(1, 0)
    }
    fn i() -> Self {
        Exact::from_ints(0, 1)
    }
    fn from_int(n: i64) -> Self {
        Exact::from_ints(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Self {
        let norm = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        assert!(!norm.is_zero(), "inverse of zero");
        Exact::new(self.re.clone() / norm.clone(), -self.im.clone() / norm)
    }
    fn conj(&self) -> Self {
        Exact::new(self.re.clone(), -self.im.clone())
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn root_of_unity(k: i64, n: i64) -> Option<Self> {
        if n <= 0 {
            return None;
        }
        let k = k.rem_euclid(n);
        // i^(4k/n) must be a Gaussian rational: only quarter turns are.
        if (4 * k) % n != 0 {
            return None;
        }
        let quarter = (4 * k / n).rem_euclid(4);
        Some(match quarter {
            0 => Exact::from_ints(1, 0),
            1 => Exact::from_ints(0, 1),
            2 => Exact::from_ints(-1, 0),
            _ => Exact::from_ints(0, -1),
        })
    }
    fn deviation(&self, other: &Self) -> f64 {
        if self == other {
            0.0
        } else {
            let (ar, ai) = self.to_f64_pair();
            let (br, bi) = other.to_f64_pair();
            ((ar - br).powi(2) + (ai - bi).powi(2)).sqrt()
        }
    }
}

/// Floating-point scalar used for cocycles outside the Gaussian rationals.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Approx(pub Complex64);

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        Approx(self.0 + rhs.0)
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        Approx(self.0 - rhs.0)
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        Approx(self.0 * rhs.0)
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl Scalar for Approx {
    fn zero() -> Self {
        Approx(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Approx(Complex64::new(1.0, 0.0))
    }
    fn i() -> Self {
        Approx(Complex64::new(0.0, 1.0))
    }
    fn from_int(n: i64) -> Self {
        Approx(Complex64::new(n as f64, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.norm() < 1e-14
    }
    fn inv(&self) -> Self {
        Approx(self.0.inv())
    }
    fn conj(&self) -> Self {
        Approx(self.0.conj())
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.0 - other.0).norm() <= tol
    }
    fn root_of_unity(k: i64, n: i64) -> Option<Self> {
        if n <= 0 {
            return None;
        }
        let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        Some(Approx(Complex64::from_polar(1.0, angle)))
    }
    fn deviation(&self, other: &Self) -> f64 {
        (self.0 - other.0).norm()
    }
}
