//! Exact complex numbers with rational components.
//!
//! Polynomial coefficients are kept exact through parsing and formal
//! differentiation, and only converted to `f64` at evaluation time. This keeps
//! the algebraic machinery (weight systems, Jacobian minors as polynomials)
//! free of parse-time rounding.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A complex number `re + im·i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl QComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    /// Division; `rhs` must be nonzero.
    pub fn div(&self, rhs: &QComplex) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let denom = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &denom;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &denom;
        Some(Self::new(re, im))
    }

    /// Lossy conversion for numerical evaluation.
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Convert a `BigRational` to `f64`, falling back to a quotient of parts when
/// the numerator or denominator overflows `f64` on its own.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Render a rational as `p/q`, or just `p` when the denominator is one.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Add for &QComplex {
    type Output = QComplex;
    fn add(self, rhs: &QComplex) -> QComplex {
        QComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &QComplex {
    type Output = QComplex;
    fn sub(self, rhs: &QComplex) -> QComplex {
        QComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &QComplex {
    type Output = QComplex;
    fn mul(self, rhs: &QComplex) -> QComplex {
        QComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for QComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_to_string(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", rational_to_string(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i",
            rational_to_string(&self.re),
            sign,
            rational_to_string(&self.im.abs())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = QComplex::new(q(1, 2), q(1, 3));
        let b = QComplex::new(q(1, 6), q(-1, 3));
        let sum = &a + &b;
        assert_eq!(sum.re, q(2, 3));
        assert!(sum.im.is_zero());

        // (1+i)(1-i) = 2
        let u = QComplex::new(q(1, 1), q(1, 1));
        let v = QComplex::new(q(1, 1), q(-1, 1));
        let prod = &u * &v;
        assert_eq!(prod, QComplex::from_int(2));
    }

    #[test]
    fn division_round_trips() {
        let a = QComplex::new(q(3, 7), q(-2, 5));
        let b = QComplex::new(q(1, 2), q(4, 3));
        let c = a.div(&b).unwrap();
        assert_eq!(&c * &b, a);
        assert!(a.div(&QComplex::zero()).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(QComplex::from_int(3).to_string(), "3");
        assert_eq!(QComplex::i().to_string(), "1i");
        assert_eq!(QComplex::new(q(1, 2), q(-3, 4)).to_string(), "1/2-3/4i");
    }
}
