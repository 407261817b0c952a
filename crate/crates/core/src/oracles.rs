//! Brute-force reference implementations for the test suites.
//!
//! The oracles work on a dense coefficient grid of their own and share only
//! number construction with the rest of the crate: none of them calls the
//! crate's series inversion, square root, multiplication or solver.

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{LcError, Result};
use crate::exponent::{Exponent, ValidityBound};
use crate::linalg::{ComplexMatrix, LcMatrix};
use crate::number::LcNumber;

/// What an oracle computed, for reporting from test harnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub oracle: &'static str,
    pub inputs: String,
    pub output: String,
    pub method: &'static str,
}

impl OracleReport {
    pub fn new(oracle: &'static str, inputs: String, output: String) -> Self {
        let method = match oracle {
            "series_inv_longdiv" => "triangular solve of the convolution system, term by term",
            "series_sqrt_newton" => "Newton iteration y <- (y + a/y)/2 on truncated dense series",
            "eig2x2_symbolic" => "quadratic formula over series with the two series oracles",
            "charpoly_roots_complex" => "cofactor expansion of det(B - xI), closed form or Durand-Kerner",
            _ => "unspecified",
        };
        OracleReport {
            oracle,
            inputs,
            output,
            method,
        }
    }
}

/// Coefficients `c[k]` of `d^((start + k) / den)`, with the final index
/// the last one known.
#[derive(Clone, Debug)]
struct Grid {
    den: i64,
    start: i64,
    c: Vec<Complex64>,
}

fn common_den(numbers: &[&LcNumber], extra: &[Exponent]) -> i64 {
    numbers
        .iter()
        .flat_map(|a| a.terms().iter().map(|(q, _)| q.denominator()))
        .chain(extra.iter().map(|q| q.denominator()))
        .fold(1, |acc, d| acc.lcm(&d))
}

fn grid_index(q: Exponent, den: i64) -> i64 {
    q.numerator() * (den / q.denominator())
}

impl Grid {
    /// Dense copy of `a` covering exponents up to `last / den`.
    fn from_number(a: &LcNumber, den: i64, start: i64, last: i64) -> Self {
        let len = (last - start + 1).max(0) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); len];
        for (q, v) in a.terms() {
            let k = grid_index(*q, den) - start;
            assert!(k >= 0, "term below grid start");
            if (k as usize) < len {
                c[k as usize] = *v;
            }
        }
        Grid { den, start, c }
    }

    fn last(&self) -> i64 {
        self.start + self.c.len() as i64 - 1
    }

    fn to_number(&self) -> LcNumber {
        let raw = self
            .c
            .iter()
            .enumerate()
            .map(|(k, v)| (Exponent::new(self.start + k as i64, self.den).unwrap(), *v))
            .collect();
        let bound = Exponent::new(self.last(), self.den).unwrap();
        LcNumber::new(raw, ValidityBound::Finite(bound)).expect("finite oracle coefficients")
    }

    fn mul(&self, other: &Self, last: i64) -> Self {
        let start = self.start + other.start;
        let len = (last - start + 1).max(0) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); len];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                if i + j < len {
                    c[i + j] += a * b;
                }
            }
        }
        Grid {
            den: self.den,
            start,
            c,
        }
    }

    fn add(&self, other: &Self, scale_other: f64) -> Self {
        let start = self.start.min(other.start);
        let last = self.last().min(other.last());
        let len = (last - start + 1).max(0) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); len];
        for (g, s) in [(self, 1.0), (other, scale_other)] {
            for (k, v) in g.c.iter().enumerate() {
                let idx = g.start + k as i64 - start;
                if (idx as usize) < len {
                    c[idx as usize] += v * s;
                }
            }
        }
        Grid {
            den: self.den,
            start,
            c,
        }
    }

    fn scale(&self, s: f64) -> Self {
        Grid {
            den: self.den,
            start: self.start,
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    fn leading_index(&self) -> Option<usize> {
        self.c.iter().position(|v| v.norm() > 0.0)
    }

    /// `1 / self` by long division, covering grid indices up to `last`.
    fn inv(&self, last: i64) -> Result<Self> {
        let lead = self.leading_index().ok_or(LcError::DivisionByZero)?;
        let a = &self.c[lead..];
        let start = -(self.start + lead as i64);
        let len = (last - start + 1).max(0) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); len];
        for m in 0..len {
            let mut acc = if m == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            for j in 1..=m.min(a.len() - 1) {
                acc -= a[j] * c[m - j];
            }
            c[m] = acc / a[0];
        }
        Ok(Grid {
            den: self.den,
            start,
            c,
        })
    }
}

/// `1/a` with coefficients up to `bound`, by recursive long division.
pub fn series_inv_longdiv(a: &LcNumber, bound: Exponent) -> Result<LcNumber> {
    let lambda = a.lambda().ok_or(LcError::DivisionByZero)?;
    let den = common_den(&[a], &[bound]);
    let start = grid_index(lambda, den);
    let last_out = grid_index(bound, den);
    let last_in = last_out + 2 * start;
    let g = Grid::from_number(a, den, start, last_in);
    Ok(g.inv(last_out)?.to_number())
}

fn sqrt_grid(a: &Grid, last: i64) -> Result<Grid> {
    let a0 = a.c.first().copied().unwrap_or_default();
    if a.start != 0 || a0.im != 0.0 || !(a0.re > 0.0) {
        return Err(LcError::Domain(
            "Newton square root oracle needs a positive constant leading term".into(),
        ));
    }
    let mut y = Grid {
        den: a.den,
        start: 0,
        c: vec![Complex64::new(a0.re.sqrt(), 0.0)],
    };
    y.c.resize((last + 1) as usize, Complex64::new(0.0, 0.0));
    // each step doubles the number of correct coefficients
    let steps = 2 + (64 - (last as u64 + 1).leading_zeros()) as usize;
    for _ in 0..steps {
        let quotient = a.mul(&y.inv(last)?, last);
        y = y.add(&quotient, 1.0).scale(0.5);
    }
    Ok(y)
}

/// `sqrt(a)` for `a` with a positive constant leading term, by Newton's
/// method on truncated series.
pub fn series_sqrt_newton(a: &LcNumber, bound: Exponent) -> Result<LcNumber> {
    if a.lambda() != Some(Exponent::ZERO) {
        return Err(LcError::Domain("Newton square root oracle needs lambda(a) = 0".into()));
    }
    let den = common_den(&[a], &[bound]);
    let last = grid_index(bound, den);
    Ok(sqrt_grid(&Grid::from_number(a, den, 0, last), last)?.to_number())
}

/// Both eigenvalues of a 2x2 at-most-finite matrix by the quadratic
/// formula, ordered by the modulus of their constant parts.
pub fn eig2x2_symbolic(a: &LcMatrix, bound: Exponent) -> Result<(LcNumber, LcNumber)> {
    if a.dim() != 2 {
        return Err(LcError::DimensionMismatch {
            expected: 2,
            got: a.dim(),
        });
    }
    let entries = [a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1)];
    if entries.iter().any(|e| !e.is_at_most_finite()) {
        return Err(LcError::Domain("eig2x2 oracle needs at most finite entries".into()));
    }
    let den = common_den(&entries, &[bound]);
    let last = grid_index(bound, den);
    let g: Vec<Grid> = entries
        .iter()
        .map(|e| Grid::from_number(e, den, 0, last))
        .collect();
    let trace = g[0].add(&g[3], 1.0);
    let det = g[0].mul(&g[3], last).add(&g[1].mul(&g[2], last), -1.0);
    let disc = trace.mul(&trace, last).add(&det, -4.0);
    let lead = disc.c.first().copied().unwrap_or_default();
    if !(lead.re > 0.0) || lead.im != 0.0 {
        return Err(LcError::Domain(
            "discriminant has no positive real constant part".into(),
        ));
    }
    let root = sqrt_grid(&disc, last)?;
    let plus = trace.add(&root, 1.0).scale(0.5).to_number();
    let minus = trace.add(&root, -1.0).scale(0.5).to_number();
    let modulus = |x: &LcNumber| x.coeff(Exponent::ZERO).norm();
    Ok(if modulus(&plus) >= modulus(&minus) {
        (plus, minus)
    } else {
        (minus, plus)
    })
}

type Poly = Vec<Complex64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly, sign: f64) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y * sign;
    }
    out
}

/// `det(M)` for a matrix of polynomials, by cofactor expansion.
fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = vec![Complex64::new(0.0, 0.0)];
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(&m[0][j], &det_poly(&minor));
        total = poly_add(&total, &term, if j % 2 == 0 { 1.0 } else { -1.0 });
    }
    total
}

/// Coefficients of `det(x I - B)`, lowest degree first, monic.
pub fn charpoly(b: &ComplexMatrix) -> Vec<Complex64> {
    let n = b.dim();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        vec![-b.get(i, j), Complex64::new(1.0, 0.0)]
                    } else {
                        vec![-b.get(i, j)]
                    }
                })
                .collect()
        })
        .collect();
    det_poly(&m)
}

fn horner(p: &[Complex64], x: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

fn durand_kerner(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = horner(&monic, z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-15 * radius {
            break;
        }
    }
    // Newton polish on the original polynomial
    let deriv: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    for root in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&deriv, *root);
            if d.norm() == 0.0 {
                break;
            }
            *root -= horner(&monic, *root) / d;
        }
    }
    z
}

/// All eigenvalues of a complex matrix with `n <= 4`.
pub fn charpoly_roots_complex(b: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = b.dim();
    if n > 4 {
        return Err(LcError::Domain(format!("charpoly oracle supports n <= 4, got {n}")));
    }
    let p = charpoly(b);
    Ok(match n {
        1 => vec![-p[0]],
        2 => {
            // x^2 + p1 x + p0
            let (bq, cq) = (p[1], p[0]);
            let s = (bq * bq - cq * 4.0).sqrt();
            let q = if (bq.conj() * s).re >= 0.0 {
                -(bq + s) * 0.5
            } else {
                -(bq - s) * 0.5
            };
            if q.norm() == 0.0 {
                vec![Complex64::new(0.0, 0.0); 2]
            } else {
                vec![q, cq / q]
            }
        }
        _ => durand_kerner(&p),
    })
}
