//! Truncated Levi-Civita numbers: exact rational exponents with double
//! precision complex coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{LcError, Result};
use crate::exponent::{Exponent, ValidityBound};

pub type Coeff = Complex64;

/// Relative cancellation threshold applied per exponent when terms merge.
pub const REL_EPS: f64 = 1e-14;
/// Coefficients at or below this magnitude are always discarded.
pub const ABS_FLOOR: f64 = 1e-300;

/// A truncated element of the Levi-Civita field.
///
/// Terms are stored strictly increasing by exponent, none of them zero, and
/// all of them inside `valid_to`. Coefficients of exponents above `valid_to`
/// are unknown; coefficients of exponents below it that are not stored are
/// exactly zero.
#[derive(Clone, PartialEq)]
pub struct LcNumber {
    terms: Vec<(Exponent, Coeff)>,
    valid_to: ValidityBound,
}

/// Sorts, merges and cleans a raw term list.
///
/// A merged coefficient is dropped when its magnitude is at most
/// `REL_EPS` times the summed magnitudes of its contributions (floating
/// point cancellation residue), at most `ABS_FLOOR`, or at most `abs_eps`.
fn collect(
    mut raw: Vec<(Exponent, Coeff, f64)>,
    valid_to: ValidityBound,
    abs_eps: f64,
) -> Vec<(Exponent, Coeff)> {
    raw.sort_by_key(|t| t.0);
    let mut out: Vec<(Exponent, Coeff)> = Vec::with_capacity(raw.len());
    let keep = |sum: Coeff, mag: f64| {
        let s = sum.norm();
        s > REL_EPS * mag && s > ABS_FLOOR && s > abs_eps
    };
    let mut iter = raw.into_iter().peekable();
    while let Some((q, mut sum, mut mag)) = iter.next() {
        while let Some(&(q2, c2, m2)) = iter.peek() {
            if q2 != q {
                break;
            }
            sum += c2;
            mag += m2;
            iter.next();
        }
        if valid_to.admits(q) && keep(sum, mag) {
            out.push((q, sum));
        }
    }
    out
}

fn with_mag(terms: impl IntoIterator<Item = (Exponent, Coeff)>) -> Vec<(Exponent, Coeff, f64)> {
    terms.into_iter().map(|(q, c)| (q, c, c.norm())).collect()
}

fn min_bound(a: ValidityBound, b: ValidityBound) -> ValidityBound {
    a.min(b)
}

impl LcNumber {
    /// Builds a number from arbitrary (exponent, coefficient) pairs.
    pub fn new(raw: Vec<(Exponent, Coeff)>, valid_to: ValidityBound) -> Result<Self> {
        Self::with_eps(raw, valid_to, 0.0)
    }

    /// Like [`LcNumber::new`] with an additional absolute cleanup threshold.
    pub fn with_eps(raw: Vec<(Exponent, Coeff)>, valid_to: ValidityBound, eps: f64) -> Result<Self> {
        if let Some((q, c)) = raw.iter().find(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(LcError::NonFinite(*c, *q));
        }
        Ok(LcNumber {
            terms: collect(with_mag(raw), valid_to, eps),
            valid_to,
        })
    }

    /// Builds from terms already known to be finite; used internally.
    fn from_raw(raw: Vec<(Exponent, Coeff, f64)>, valid_to: ValidityBound) -> Self {
        LcNumber {
            terms: collect(raw, valid_to, 0.0),
            valid_to,
        }
    }

    pub fn zero() -> Self {
        LcNumber {
            terms: Vec::new(),
            valid_to: ValidityBound::Infinite,
        }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::new(1.0, 0.0))
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, Exponent::ZERO)
    }

    pub fn real(x: f64) -> Self {
        Self::constant(Coeff::new(x, 0.0))
    }

    pub fn monomial(c: Coeff, e: Exponent) -> Self {
        assert!(c.re.is_finite() && c.im.is_finite(), "non-finite coefficient");
        let terms = if c.norm() > ABS_FLOOR {
            vec![(e, c)]
        } else {
            Vec::new()
        };
        LcNumber {
            terms,
            valid_to: ValidityBound::Infinite,
        }
    }

    /// The canonical infinitesimal `d`.
    pub fn d() -> Self {
        Self::monomial(Coeff::new(1.0, 0.0), Exponent::ONE)
    }

    pub fn terms(&self) -> &[(Exponent, Coeff)] {
        &self.terms
    }

    pub fn valid_to(&self) -> ValidityBound {
        self.valid_to
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.im == 0.0)
    }

    /// Minimum of the support; `None` for zero.
    pub fn lambda(&self) -> Option<Exponent> {
        self.terms.first().map(|(q, _)| *q)
    }

    pub fn leading(&self) -> Option<(Exponent, Coeff)> {
        self.terms.first().copied()
    }

    /// The coefficient `a[q]`; zero for exponents absent from the support.
    pub fn coeff(&self, q: Exponent) -> Coeff {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(&q))
            .map(|i| self.terms[i].1)
            .unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_at_most_finite(&self) -> bool {
        self.lambda().is_none_or(|l| l >= Exponent::ZERO)
    }

    /// Drops terms above `bound` and narrows the window to it. Never widens.
    pub fn truncate(&self, bound: ValidityBound) -> Self {
        let valid_to = min_bound(self.valid_to, bound);
        LcNumber {
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|(q, _)| valid_to.admits(*q))
                .collect(),
            valid_to,
        }
    }

    /// The constant part `a[0]`.
    pub fn pi_part(&self) -> Result<Coeff> {
        match self.lambda() {
            Some(l) if l < Exponent::ZERO => Err(LcError::Domain(format!(
                "constant part of an infinitely large number (lambda = {l})"
            ))),
            _ => Ok(self.coeff(Exponent::ZERO)),
        }
    }

    /// Multiplies every coefficient by a machine complex constant.
    pub fn scale(&self, c: Coeff) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|(q, a)| {
                let p = a * c;
                (*q, p, p.norm())
            })
            .collect();
        Self::from_raw(raw, self.valid_to)
    }

    /// Exact multiplication by `d^shift`.
    pub fn scale_exponents(&self, shift: Exponent) -> Self {
        LcNumber {
            terms: self.terms.iter().map(|(q, c)| (*q + shift, *c)).collect(),
            valid_to: self.valid_to.shift(shift),
        }
    }

    pub fn conj(&self) -> Self {
        LcNumber {
            terms: self.terms.iter().map(|(q, c)| (*q, c.conj())).collect(),
            valid_to: self.valid_to,
        }
    }

    fn product_bound(&self, other: &Self) -> ValidityBound {
        // lambda(0) = +inf, so the corresponding candidate drops out
        let lhs = match other.lambda() {
            Some(l) => self.valid_to.shift(l),
            None => ValidityBound::Infinite,
        };
        let rhs = match self.lambda() {
            Some(l) => other.valid_to.shift(l),
            None => ValidityBound::Infinite,
        };
        min_bound(lhs, rhs)
    }

    fn convolve(&self, other: &Self, bound: ValidityBound, f: impl Fn(Coeff, Coeff) -> Coeff) -> Self {
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (qa, ca) in &self.terms {
            for (qb, cb) in &other.terms {
                let q = *qa + *qb;
                if !bound.admits(q) {
                    break;
                }
                let p = f(*ca, *cb);
                raw.push((q, p, p.norm()));
            }
        }
        Self::from_raw(raw, bound)
    }

    /// `|z|^2 = conj(z) * z` with the imaginary part discarded as exactly zero.
    pub fn norm_sqr(&self) -> Self {
        let bound = self.product_bound(self);
        self.convolve(self, bound, |a, b| Coeff::new(a.re * b.re + a.im * b.im, 0.0))
    }

    /// Splits a nonzero number as `c * d^lambda * (1 + eps)` with `lambda(eps) > 0`.
    fn factor_leading(&self) -> (Exponent, Coeff, LcNumber) {
        let (lambda, c) = self.terms[0];
        let inv_c = c.inv();
        let eps = LcNumber {
            terms: self.terms[1..]
                .iter()
                .map(|(q, a)| (*q - lambda, a * inv_c))
                .filter(|(_, a)| a.norm() > ABS_FLOOR)
                .collect(),
            valid_to: self.valid_to.shift(-lambda),
        };
        (lambda, c, eps)
    }

    /// Evaluates `sum_k coeffs[k] * eps^k` by Horner's rule, taking exactly
    /// as many terms as can reach the window of `eps`.
    fn series_in(eps: &LcNumber, coeff: impl Fn(usize) -> f64, what: &str) -> Result<LcNumber> {
        let Some(q_eps) = eps.lambda() else {
            return Ok(LcNumber::one());
        };
        let Some(bound) = eps.valid_to.finite() else {
            return Err(LcError::InsufficientPrecision(format!(
                "{what} of a non-monomial number needs a finite validity bound"
            )));
        };
        let n_terms = bound.floor_div(q_eps).max(0) as usize;
        let mut acc = LcNumber::real(coeff(n_terms));
        for k in (0..n_terms).rev() {
            acc = &LcNumber::real(coeff(k)) + &(eps * &acc);
        }
        Ok(acc)
    }

    /// Multiplicative inverse; valid to `valid_to - 2 lambda`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(LcError::DivisionByZero);
        }
        let (lambda, c, eps) = self.factor_leading();
        let result_bound = self.valid_to.shift(-(lambda + lambda));
        if let ValidityBound::Finite(b) = result_bound {
            if b < -lambda {
                return Err(LcError::InsufficientPrecision(format!(
                    "inverse window ends at {b}, below its leading exponent {}",
                    -lambda
                )));
            }
        }
        let geometric = Self::series_in(&eps, |k| if k % 2 == 0 { 1.0 } else { -1.0 }, "inverse")?;
        Ok(geometric
            .scale(c.inv())
            .scale_exponents(-lambda)
            .truncate(result_bound))
    }

    /// Square root in the ordered field of real numbers; valid to
    /// `valid_to - lambda / 2`. The result has a positive leading coefficient.
    pub fn sqrt_real(&self) -> Result<Self> {
        if !self.is_real() {
            return Err(LcError::Domain("square root of a complex number".into()));
        }
        let half = |b: ValidityBound| match b {
            ValidityBound::Finite(e) => ValidityBound::Finite(e.checked_div_int(2).expect("exponent overflow")),
            ValidityBound::Infinite => ValidityBound::Infinite,
        };
        if self.is_zero() {
            return Ok(LcNumber {
                terms: Vec::new(),
                valid_to: half(self.valid_to),
            });
        }
        let (lambda, c, eps) = self.factor_leading();
        if c.re < 0.0 {
            return Err(LcError::Domain("square root of a negative number".into()));
        }
        let half_lambda = lambda.checked_div_int(2).ok_or(LcError::ExponentOverflow)?;
        let binomial = |k: usize| {
            (0..k).fold(1.0, |acc, j| acc * (0.5 - j as f64) / (j as f64 + 1.0))
        };
        let series = Self::series_in(&eps, binomial, "square root")?;
        Ok(series
            .scale(Coeff::new(c.re.sqrt(), 0.0))
            .scale_exponents(half_lambda)
            .truncate(self.valid_to.shift(-half_lambda)))
    }

    /// `|a|` for a real number: `a` or `-a` by the sign of the leading coefficient.
    pub fn abs_real(&self) -> Result<Self> {
        if !self.is_real() {
            return Err(LcError::Domain("abs_real of a complex number".into()));
        }
        match self.leading() {
            Some((_, c)) if c.re < 0.0 => Ok(-self),
            _ => Ok(self.clone()),
        }
    }

    /// `|z| = sqrt(re^2 + im^2)`; exact sign flip for real inputs.
    pub fn abs_complex(&self) -> Result<Self> {
        if self.is_real() {
            self.abs_real()
        } else {
            self.norm_sqr().sqrt_real()
        }
    }

    /// The field order: sign of the leading coefficient of `self - other`.
    pub fn cmp_order(&self, other: &Self) -> Result<Ordering> {
        if !self.is_real() || !other.is_real() {
            return Err(LcError::Domain("order comparison of complex numbers".into()));
        }
        let diff = self - other;
        Ok(match diff.leading() {
            None => Ordering::Equal,
            Some((_, c)) if c.re > 0.0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        })
    }

    /// `sup |a[q]|` over stored exponents `q <= r`.
    pub fn semi_norm(&self, r: Exponent) -> Result<f64> {
        if !self.valid_to.admits(r) {
            return Err(LcError::WindowExceeded {
                requested: r,
                valid_to: self.valid_to,
            });
        }
        Ok(self
            .terms
            .iter()
            .take_while(|(q, _)| *q <= r)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max))
    }

    /// `self =_r other` within `tol`.
    pub fn eq_up_to(&self, other: &Self, r: Exponent, tol: f64) -> Result<bool> {
        for b in [self.valid_to, other.valid_to] {
            if !b.admits(r) {
                return Err(LcError::WindowExceeded {
                    requested: r,
                    valid_to: b,
                });
            }
        }
        Ok((self - other).semi_norm(r)? <= tol)
    }
}

impl Default for LcNumber {
    fn default() -> Self {
        LcNumber::zero()
    }
}

impl fmt::Debug for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LcNumber({} | valid_to {})", self, self.valid_to)
    }
}

impl fmt::Display for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_series(self))
    }
}

impl Add for &LcNumber {
    type Output = LcNumber;
    fn add(self, rhs: &LcNumber) -> LcNumber {
        let bound = min_bound(self.valid_to, rhs.valid_to);
        let raw = with_mag(self.terms.iter().chain(rhs.terms.iter()).copied());
        LcNumber::from_raw(raw, bound)
    }
}

impl Sub for &LcNumber {
    type Output = LcNumber;
    fn sub(self, rhs: &LcNumber) -> LcNumber {
        let bound = min_bound(self.valid_to, rhs.valid_to);
        let raw = with_mag(
            self.terms
                .iter()
                .copied()
                .chain(rhs.terms.iter().map(|(q, c)| (*q, -c))),
        );
        LcNumber::from_raw(raw, bound)
    }
}

impl Mul for &LcNumber {
    type Output = LcNumber;
    fn mul(self, rhs: &LcNumber) -> LcNumber {
        let bound = self.product_bound(rhs);
        self.convolve(rhs, bound, |a, b| a * b)
    }
}

impl Neg for &LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        LcNumber {
            terms: self.terms.iter().map(|(q, c)| (*q, -c)).collect(),
            valid_to: self.valid_to,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: LcNumber) -> LcNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LcNumber> for LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: &LcNumber) -> LcNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        -&self
    }
}
