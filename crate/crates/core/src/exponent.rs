//! Exact rational exponents and validity bounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;

use crate::error::{LcError, Result};

/// An exact rational number `numerator / denominator` in lowest terms.
///
/// All arithmetic is overflow-checked. The operator impls panic on
/// overflow; use the `checked_*` methods where the inputs are untrusted.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: i64,
    den: i64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { num: 0, den: 1 };
    pub const ONE: Exponent = Exponent { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(LcError::Domain("exponent with zero denominator".into()));
        }
        Self::reduce(num as i128, den as i128).ok_or(LcError::ExponentOverflow)
    }

    pub const fn integer(n: i64) -> Self {
        Exponent { num: n, den: 1 }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    fn reduce(mut num: i128, mut den: i128) -> Option<Self> {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Some(Exponent {
            num: i64::try_from(num).ok()?,
            den: i64::try_from(den).ok()?,
        })
    }

    pub fn checked_add(self, other: Self) -> Option<Self> {
        let num = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        let den = self.den as i128 * other.den as i128;
        Self::reduce(num, den)
    }

    pub fn checked_sub(self, other: Self) -> Option<Self> {
        self.checked_add(other.checked_neg()?)
    }

    pub fn checked_neg(self) -> Option<Self> {
        Some(Exponent {
            num: self.num.checked_neg()?,
            den: self.den,
        })
    }

    pub fn checked_mul_int(self, k: i64) -> Option<Self> {
        Self::reduce(self.num as i128 * k as i128, self.den as i128)
    }

    pub fn checked_div_int(self, k: i64) -> Option<Self> {
        if k == 0 {
            return None;
        }
        Self::reduce(self.num as i128, self.den as i128 * k as i128)
    }

    /// `floor(self / other)` for `other > 0`.
    pub fn floor_div(self, other: Self) -> i64 {
        assert!(other.num > 0, "floor_div by non-positive exponent");
        let n = self.num as i128 * other.den as i128;
        let d = self.den as i128 * other.num as i128;
        i64::try_from(Integer::div_floor(&n, &d)).expect("exponent overflow")
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        self.checked_add(rhs).expect("exponent overflow")
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        self.checked_sub(rhs).expect("exponent overflow")
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        self.checked_neg().expect("exponent overflow")
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::integer(n)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Largest exponent up to which stored coefficients are exact, or
/// `Infinite` for numbers known in full.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValidityBound {
    Finite(Exponent),
    Infinite,
}

impl ValidityBound {
    pub fn finite(self) -> Option<Exponent> {
        match self {
            ValidityBound::Finite(e) => Some(e),
            ValidityBound::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ValidityBound::Infinite)
    }

    /// Whether exponent `q` lies inside the window.
    pub fn admits(self, q: Exponent) -> bool {
        match self {
            ValidityBound::Finite(b) => q <= b,
            ValidityBound::Infinite => true,
        }
    }

    pub fn shift(self, by: Exponent) -> Self {
        match self {
            ValidityBound::Finite(b) => ValidityBound::Finite(b + by),
            ValidityBound::Infinite => ValidityBound::Infinite,
        }
    }
}

impl From<Exponent> for ValidityBound {
    fn from(e: Exponent) -> Self {
        ValidityBound::Finite(e)
    }
}

impl fmt::Display for ValidityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidityBound::Finite(e) => write!(f, "{e}"),
            ValidityBound::Infinite => write!(f, "+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let e = Exponent::new(4, -6).unwrap();
        assert_eq!(e.numerator(), -2);
        assert_eq!(e.denominator(), 3);
        assert!(Exponent::new(1, 0).is_err());
    }

    #[test]
    fn floor_div_rounds_down() {
        let b = Exponent::integer(3);
        let q = Exponent::new(2, 3).unwrap();
        assert_eq!(b.floor_div(q), 4);
        assert_eq!(Exponent::integer(-1).floor_div(Exponent::integer(2)), -1);
    }

    #[test]
    fn overflow_is_detected() {
        let big = Exponent::integer(i64::MAX);
        assert!(big.checked_add(Exponent::ONE).is_none());
        let awkward = Exponent::new(1, i64::MAX).unwrap();
        assert!(awkward.checked_add(Exponent::new(1, i64::MAX - 1).unwrap()).is_none());
    }

    #[test]
    fn bound_ordering() {
        let a = ValidityBound::Finite(Exponent::integer(5));
        assert!(a < ValidityBound::Infinite);
        assert!(a.admits(Exponent::integer(5)));
        assert!(!a.admits(Exponent::integer(6)));
    }

    proptest! {
        #[test]
        fn order_matches_rationals(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let x = Exponent::new(a, b).unwrap();
            let y = Exponent::new(c, d).unwrap();
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            prop_assert_eq!(x.numerator().gcd(&x.denominator()), 1);
            prop_assert_eq!((x + y) - y, x);
        }
    }
}
