//! Dense vectors and matrices over [`LcNumber`].

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::error::{LcError, Result};
use crate::exponent::{Exponent, ValidityBound};
use crate::number::{Coeff, LcNumber};

#[derive(Clone, Debug, PartialEq)]
pub struct LcVector {
    entries: Vec<LcNumber>,
}

impl LcVector {
    /// `None` for an empty entry list.
    pub fn new(entries: Vec<LcNumber>) -> Option<Self> {
        (!entries.is_empty()).then_some(LcVector { entries })
    }

    pub fn ones(n: usize) -> Self {
        LcVector {
            entries: vec![LcNumber::one(); n.max(1)],
        }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut entries = vec![LcNumber::zero(); n];
        entries[i] = LcNumber::one();
        LcVector { entries }
    }

    pub fn from_constants(values: &[Complex64]) -> Self {
        LcVector {
            entries: values.iter().map(|c| LcNumber::constant(*c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[LcNumber] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &LcNumber {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LcNumber::is_zero)
    }

    /// The vector's window: the minimum over its entries.
    pub fn valid_to(&self) -> ValidityBound {
        self.entries
            .iter()
            .map(LcNumber::valid_to)
            .min()
            .unwrap_or(ValidityBound::Infinite)
    }

    pub fn map(&self, f: impl Fn(&LcNumber) -> LcNumber) -> Self {
        LcVector {
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Multiplies every entry by `s`.
    pub fn scale_by(&self, s: &LcNumber) -> Self {
        self.map(|x| x * s)
    }

    pub fn scale_coeffs(&self, c: Coeff) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Truncates every entry to the common bound `min(valid_to, bound)`.
    pub fn truncate(&self, bound: ValidityBound) -> Self {
        let common = self.valid_to().min(bound);
        self.map(|x| x.truncate(common))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(LcVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `sum conj(x_i) * y_i`
    pub fn dot_conj(&self, other: &Self) -> Result<LcNumber> {
        check_dim(self.len(), other.len())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(LcNumber::zero(), |acc, (x, y)| &acc + &(&x.conj() * y)))
    }

    /// `sum |x_i|^2`, real by construction.
    pub fn norm_sqr(&self) -> LcNumber {
        self.entries
            .iter()
            .fold(LcNumber::zero(), |acc, x| &acc + &x.norm_sqr())
    }

    /// The l2 norm; zero for the zero vector.
    pub fn norm_l2(&self) -> Result<LcNumber> {
        self.norm_sqr().sqrt_real()
    }

    /// The maximum norm under the field order.
    pub fn norm_max(&self) -> Result<MaxNorm> {
        let mut best: Option<(usize, LcNumber)> = None;
        let mut abs_values = Vec::with_capacity(self.len());
        for (i, x) in self.entries.iter().enumerate() {
            let a = x.abs_complex()?;
            let replace = match &best {
                None => true,
                Some((_, b)) => a.cmp_order(b)? == Ordering::Greater,
            };
            if replace {
                best = Some((i, a.clone()));
            }
            abs_values.push(a);
        }
        let (index, value) = best.expect("vector is non-empty");
        // pivot uniqueness is a statement about constant parts
        let top = value.coeff(Exponent::ZERO).norm();
        let tied = abs_values.iter().enumerate().any(|(i, a)| {
            i != index && {
                let other = a.coeff(Exponent::ZERO).norm();
                (top - other).abs() <= 1e-12 * top.max(other)
            }
        });
        Ok(MaxNorm {
            value,
            index,
            tied,
        })
    }
}

/// Result of [`LcVector::norm_max`]. `tied` reports that another entry
/// shares the pivot's constant-part modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxNorm {
    pub value: LcNumber,
    pub index: usize,
    pub tied: bool,
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(LcError::DimensionMismatch { expected, got })
    }
}

/// A square matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct LcMatrix {
    n: usize,
    entries: Vec<LcNumber>,
}

impl LcMatrix {
    pub fn from_rows(rows: Vec<Vec<LcNumber>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(LcError::Domain("empty matrix".into()));
        }
        for row in &rows {
            check_dim(n, row.len())?;
        }
        Ok(LcMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> LcNumber) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        LcMatrix {
            n,
            entries: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { LcNumber::one() } else { LcNumber::zero() })
    }

    pub fn diagonal(d: Vec<LcNumber>) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { LcNumber::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LcNumber {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[LcNumber] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn map(&self, f: impl Fn(&LcNumber) -> LcNumber) -> Self {
        LcMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, bound: ValidityBound) -> Self {
        self.map(|x| x.truncate(bound))
    }

    pub fn matvec(&self, x: &LcVector) -> Result<LcVector> {
        check_dim(self.n, x.len())?;
        let entries = (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.entries())
                    .filter(|(a, _)| !a.is_zero() || a.valid_to() != ValidityBound::Infinite)
                    .fold(LcNumber::zero(), |acc, (a, xj)| &acc + &(a * xj))
            })
            .collect();
        Ok(LcVector { entries })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).fold(LcNumber::zero(), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        }))
    }

    /// `q0 = min lambda(a_ij)` over nonzero entries.
    pub fn min_valuation(&self) -> Result<Exponent> {
        self.entries
            .iter()
            .filter_map(LcNumber::lambda)
            .min()
            .ok_or_else(|| LcError::Domain("valuation of the zero matrix".into()))
    }

    /// Entrywise multiplication by `d^shift`.
    pub fn scale_by_monomial(&self, shift: Exponent) -> Self {
        self.map(|x| x.scale_exponents(shift))
    }

    pub fn scale_coeffs(&self, c: Coeff) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Entrywise constant part.
    pub fn pi_matrix(&self) -> Result<ComplexMatrix> {
        let data = self
            .entries
            .iter()
            .map(LcNumber::pi_part)
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexMatrix { n: self.n, data })
    }

    pub fn gershgorin_disks(&self) -> Result<Vec<Disk>> {
        (0..self.n)
            .map(|i| {
                let mut radius = LcNumber::zero();
                for (k, a) in self.row(i).iter().enumerate() {
                    if k != i {
                        radius = &radius + &a.abs_complex()?;
                    }
                }
                Ok(Disk {
                    center: self.get(i, i).clone(),
                    radius,
                })
            })
            .collect()
    }

    /// `u* A u / |u|^2`.
    pub fn rayleigh_quotient(&self, u: &LcVector) -> Result<LcNumber> {
        if u.is_zero() {
            return Err(LcError::DegenerateVector("zero vector".into()));
        }
        let norm2 = u.norm_sqr();
        if norm2.lambda() != Some(Exponent::ZERO) {
            return Err(LcError::DegenerateVector(format!(
                "squared norm {norm2} has no positive constant part"
            )));
        }
        let numerator = u.dot_conj(&self.matvec(u)?)?;
        Ok(&numerator * &norm2.inv()?)
    }
}

impl fmt::Display for LcMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_matrix(self))
    }
}

/// A Gershgorin disk `{z : |z - center| <= radius}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: LcNumber,
    pub radius: LcNumber,
}

impl Disk {
    /// Whether `z` lies in the disk under the field order.
    pub fn contains(&self, z: &LcNumber) -> Result<bool> {
        let dist = (z - &self.center).abs_complex()?;
        Ok(dist.cmp_order(&self.radius)? != Ordering::Greater)
    }
}

/// True when every center and radius is at most finite, which forces every
/// eigenvalue to be at most finite.
pub fn all_eigenvalues_at_most_finite(disks: &[Disk]) -> bool {
    disks
        .iter()
        .all(|d| d.center.is_at_most_finite() && d.radius.is_at_most_finite())
}

/// A plain machine-precision complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(n >= 1 && rows.iter().all(|r| r.len() == n), "square matrix required");
        ComplexMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|c| c.im == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.norm() == 0.0)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// A monic polynomial `a0 + a1 x + ... + a_{n-1} x^{n-1} + x^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<LcNumber>,
}

impl Polynomial {
    pub fn monic(coeffs: Vec<LcNumber>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(LcError::Domain("polynomial of degree 0".into()));
        }
        Ok(Polynomial { coeffs })
    }

    /// `prod (x - r_i)`, expanded exactly.
    pub fn from_roots(roots: &[LcNumber]) -> Result<Self> {
        let mut coeffs = vec![LcNumber::one()];
        for r in roots {
            // multiply by (x - r)
            let mut next = vec![LcNumber::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * r);
            }
            coeffs = next;
        }
        coeffs.pop();
        Self::monic(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a0 .. a_{n-1}`; the leading 1 is implicit.
    pub fn coeffs(&self) -> &[LcNumber] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &LcNumber) -> LcNumber {
        self.coeffs
            .iter()
            .rev()
            .fold(LcNumber::one(), |acc, c| &(&acc * x) + c)
    }

    /// Ones on the subdiagonal, `-a_i` down the last column.
    pub fn companion_matrix(&self) -> LcMatrix {
        let n = self.degree();
        LcMatrix::from_fn(n, |i, j| {
            if j == n - 1 {
                -&self.coeffs[i]
            } else if i == j + 1 {
                LcNumber::one()
            } else {
                LcNumber::zero()
            }
        })
    }
}
