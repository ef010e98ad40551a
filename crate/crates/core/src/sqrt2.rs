//! Exact arithmetic in the real quadratic field ℚ(√2).
//!
//! Ramond-sector Fock coefficients and the order-3 modular S-matrix both live
//! in ℚ(√2), so equality checks there can stay exact instead of comparing
//! floats.  An element is stored as the pair (a, b) with value a + b·√2; this
//! representation is unique because √2 is irrational.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Sqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Sqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Sqrt2 { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Sqrt2 { a, b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Sqrt2::rational(BigRational::from_integer(n.into()))
    }

    /// n/d as an element of the field; d must be nonzero.
    pub fn from_frac(n: i64, d: i64) -> Self {
        Sqrt2::rational(BigRational::new(n.into(), d.into()))
    }

    /// The generator √2.
    pub fn sqrt2() -> Self {
        Sqrt2 { a: BigRational::zero(), b: BigRational::one() }
    }

    /// 1/√2 = √2/2, the off-diagonal S-matrix entry.
    pub fn inv_sqrt2() -> Self {
        Sqrt2 { a: BigRational::zero(), b: BigRational::new(1.into(), 2.into()) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Multiplicative inverse: (a + b√2)⁻¹ = (a − b√2)/(a² − 2b²).
    /// The norm a² − 2b² vanishes only at 0.
    pub fn inv(&self) -> Self {
        let norm = &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b;
        assert!(!norm.is_zero(), "inverse of zero in Q(sqrt 2)");
        Sqrt2 { a: &self.a / &norm, b: -(&self.b / &norm) }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * core::f64::consts::SQRT_2
    }

    /// Rational part if the element lies in ℚ, otherwise `None`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Sqrt2 { a: &self.a * c, b: &self.b * c }
    }
}

impl From<i64> for Sqrt2 {
    fn from(n: i64) -> Self {
        Sqrt2::from_int(n)
    }
}

impl Add for Sqrt2 {
    type Output = Sqrt2;
    fn add(self, rhs: Sqrt2) -> Sqrt2 {
        Sqrt2 { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Sqrt2 {
    type Output = Sqrt2;
    fn sub(self, rhs: Sqrt2) -> Sqrt2 {
        Sqrt2 { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Neg for Sqrt2 {
    type Output = Sqrt2;
    fn neg(self) -> Sqrt2 {
        Sqrt2 { a: -self.a, b: -self.b }
    }
}

impl Mul for Sqrt2 {
    type Output = Sqrt2;
    fn mul(self, rhs: Sqrt2) -> Sqrt2 {
        // (a + b√2)(c + d√2) = ac + 2bd + (ad + bc)√2
        let two = BigRational::from_integer(2.into());
        Sqrt2 {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for Sqrt2 {
    type Output = Sqrt2;
    fn div(self, rhs: Sqrt2) -> Sqrt2 {
        self * rhs.inv()
    }
}

impl Zero for Sqrt2 {
    fn zero() -> Self {
        Sqrt2::default()
    }
    fn is_zero(&self) -> bool {
        Sqrt2::is_zero(self)
    }
}

impl One for Sqrt2 {
    fn one() -> Self {
        Sqrt2::from_int(1)
    }
}

impl fmt::Display for Sqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: alloc::vec::Vec<String> = alloc::vec::Vec::new();
        if !self.a.is_zero() {
            parts.push(alloc::format!("{}", self.a));
        }
        if !self.b.is_zero() {
            if self.b.is_one() {
                parts.push("sqrt2".into());
            } else {
                parts.push(alloc::format!("{}*sqrt2", self.b));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Sqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_sqrt2() {
        let x = Sqrt2::sqrt2();
        assert_eq!(x.inv(), Sqrt2::inv_sqrt2());
        assert_eq!(x.clone() * x.inv(), Sqrt2::one());
    }

    #[test]
    fn field_identities() {
        let x = Sqrt2::new(
            BigRational::new(3.into(), 2.into()),
            BigRational::new((-1).into(), 5.into()),
        );
        let y = Sqrt2::new(
            BigRational::new(1.into(), 7.into()),
            BigRational::new(4.into(), 3.into()),
        );
        let prod = x.clone() * y.clone();
        assert_eq!(prod.clone() / y.clone(), x);
        assert_eq!((x.clone() + y.clone()) - y.clone(), x);
        assert!((x.clone() - x).is_zero());
    }

    #[test]
    fn phi_zero_square_scale() {
        // (1/√2)² = 1/2, the Ramond zero-mode contraction constant.
        let half = Sqrt2::from_frac(1, 2);
        let s = Sqrt2::inv_sqrt2();
        assert_eq!(s.clone() * s, half);
    }
}
