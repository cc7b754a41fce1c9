use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};

pub type Rational = Ratio<i64>;

/// Absolute tolerance for comparing inexact offsets and pole locations.
pub const OFFSET_TOL: f64 = 1e-12;

const MAX_RECOVER_DEN: i64 = 1_000_000;

/// A real number that stays an exact rational for as long as the inputs
/// allow, and degrades to `f64` otherwise (irrational parameters, overflow).
#[derive(Clone, Copy, Debug)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Exact(Rational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(Rational::new(num, den))
    }

    /// Recover the small-denominator rational whose correctly rounded value
    /// is exactly `x`; otherwise keep `x` as is.
    pub fn from_f64(x: f64) -> Self {
        match recover_rational(x) {
            Some(r) => Scalar::Exact(r),
            None => Scalar::Approx(x),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Scalar::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Scalar::Approx(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(self) -> bool {
        match self {
            Scalar::Exact(r) => *r.numer() == 0,
            Scalar::Approx(x) => x == 0.0,
        }
    }

    pub fn signum(self) -> f64 {
        self.to_f64().signum()
    }

    pub fn abs(self) -> Self {
        if self.to_f64() < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Equality: exact for two rationals, otherwise within [`OFFSET_TOL`]
    /// scaled by magnitude.
    pub fn approx_eq(self, other: Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                (a - b).abs() <= OFFSET_TOL * a.abs().max(b.abs()).max(1.0)
            }
        }
    }

    pub fn cmp_value(self, other: Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(&b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    pub fn floor_f64(self) -> f64 {
        match self {
            Scalar::Exact(r) => r.floor().to_integer() as f64,
            Scalar::Approx(x) => x.floor(),
        }
    }

    /// Numerator and denominator when exact.
    pub fn as_ratio(self) -> Option<(i64, i64)> {
        match self {
            Scalar::Exact(r) => Some((*r.numer(), *r.denom())),
            Scalar::Approx(_) => None,
        }
    }

    fn lift2(
        self,
        other: Scalar,
        exact: impl Fn(Rational, Rational) -> Option<Rational>,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, other) {
            if let Some(r) = exact(a, b) {
                return Scalar::Exact(r);
            }
        }
        Scalar::Approx(approx(self.to_f64(), other.to_f64()))
    }
}

fn recover_rational(x: f64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    if x == x.trunc() {
        return Some(Rational::from_integer(x as i64));
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_RECOVER_DEN {
            return None;
        }
        if h2 as f64 / k2 as f64 == x {
            return Some(Rational::new(h2, k2));
        }
        let frac = v - a as f64;
        if frac == 0.0 {
            return None;
        }
        v = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::from_f64(x)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.lift2(rhs, |a, b| a.checked_add(&b), |a, b| a + b)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.lift2(rhs, |a, b| a.checked_sub(&b), |a, b| a - b)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.lift2(rhs, |a, b| a.checked_mul(&b), |a, b| a * b)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.lift2(
            rhs,
            |a, b| if *b.numer() == 0 { None } else { a.checked_div(&b) },
            |a, b| a / b,
        )
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_rationals() {
        assert_eq!(Scalar::from_f64(0.5).as_ratio(), Some((1, 2)));
        assert_eq!(Scalar::from_f64(1.0 / 3.0).as_ratio(), Some((1, 3)));
        assert_eq!(Scalar::from_f64(1.0 / 1.5).as_ratio(), Some((2, 3)));
        assert_eq!(Scalar::from_f64(1.3).as_ratio(), Some((13, 10)));
        assert_eq!(Scalar::from_f64(-4.0).as_ratio(), Some((-4, 1)));
        assert!(!Scalar::from_f64(std::f64::consts::PI).is_exact());
        assert!(!Scalar::from_f64(1.0 / std::f64::consts::PI).is_exact());
    }

    #[test]
    fn arithmetic_stays_exact() {
        let a = Scalar::from_f64(1.3) + Scalar::from_f64(2.7) - Scalar::int(1);
        assert_eq!(a.as_ratio(), Some((3, 1)));
        let b = Scalar::ratio(1, 3) * Scalar::int(3);
        assert_eq!(b, Scalar::int(1));
        let c = Scalar::Approx(0.1) + Scalar::int(1);
        assert!(!c.is_exact());
    }

    #[test]
    fn overflow_degrades() {
        let big = Scalar::Exact(Rational::new(i64::MAX - 1, 1));
        let r = big * Scalar::int(4);
        assert!(!r.is_exact());
        assert!(r.to_f64() > 1e19);
    }
}
