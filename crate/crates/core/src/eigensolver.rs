//! Power iteration over the Levi-Civita field.
//!
//! The pipeline factors the smallest valuation out of the matrix, estimates
//! the dominant eigenvalue `mu1` of the constant-part matrix with classical
//! power iteration, divides by it so the dominant eigenvalue has constant
//! part 1, and then iterates with normalization at every step. The
//! eigenvalue is the Rayleigh quotient of the final iterate, mapped back by
//! `nu1 = nu * mu1 * d^q0`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LcError, Result};
use crate::exponent::{Exponent, ValidityBound};
use crate::linalg::{ComplexMatrix, LcMatrix, LcVector, Polynomial};
use crate::number::LcNumber;

/// Reject `mu1` when the estimated `|mu2| / |mu1|` exceeds this.
pub const DOMINANCE_THRESHOLD: f64 = 0.999;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    L2,
    Max,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StartVector {
    Ones,
    /// Constant entries drawn uniformly from the complex unit disk.
    Random(u64),
    Given(LcVector),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Iterates are held to this window.
    pub truncation: Exponent,
    pub max_iters: usize,
    /// Weak convergence threshold on successive differences.
    pub tol: f64,
    /// Exponents up to this one are checked for convergence.
    pub check_window: Exponent,
    pub norm: NormKind,
    pub start: StartVector,
    pub complex_pi_iters: usize,
    pub complex_pi_tol: f64,
    /// Bound on `|A v - nu v|` over the check window for a run to count as converged.
    pub residual_tol: f64,
    /// Seed of the start vector used when estimating `mu1`.
    pub seed: u64,
    /// Stop at the first step satisfying the convergence test.
    pub stop_on_convergence: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            truncation: Exponent::integer(9),
            max_iters: 500,
            tol: 1e-12,
            check_window: Exponent::integer(9),
            norm: NormKind::L2,
            start: StartVector::Ones,
            complex_pi_iters: 20_000,
            complex_pi_tol: 1e-12,
            residual_tol: 1e-8,
            seed: 0,
            stop_on_convergence: true,
        }
    }
}

impl SolverConfig {
    pub fn with_truncation(truncation: Exponent) -> Self {
        SolverConfig {
            truncation,
            check_window: truncation,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(LcError::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if self.check_window > self.truncation {
            return Err(LcError::Config(format!(
                "check window {} exceeds truncation {}",
                self.check_window, self.truncation
            )));
        }
        if self.max_iters == 0 || self.complex_pi_iters == 0 {
            return Err(LcError::Config("iteration counts must be positive".into()));
        }
        if !(self.complex_pi_tol > 0.0) || !(self.residual_tol > 0.0) {
            return Err(LcError::Config("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Classical power iteration estimate of a dominant complex eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DominantEstimate {
    pub value: Complex64,
    /// Estimated `|mu2| / |mu1|`, from the decay rate of the residual.
    pub ratio: f64,
    pub iterations: usize,
}

fn cnorm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn decay_rate(residuals: &[f64]) -> f64 {
    let k = residuals.len();
    if k < 2 {
        return 0.0;
    }
    let window = (k - 1).min(10);
    let (last, first) = (residuals[k - 1], residuals[k - 1 - window]);
    if first == 0.0 {
        return 0.0;
    }
    (last / first).powf(1.0 / window as f64)
}

/// Largest-modulus eigenvalue of `b` with a dominance diagnostic.
pub fn estimate_dominant_complex(
    b: &ComplexMatrix,
    iters: usize,
    tol: f64,
    seed: u64,
) -> Result<DominantEstimate> {
    if b.is_zero() {
        return Err(LcError::DegenerateMatrix("constant-part matrix is zero".into()));
    }
    let n = b.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real = b.is_real();
    let mut x: Vec<Complex64> = (0..n)
        .map(|_| {
            if real {
                Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
            } else {
                random_in_unit_disk(&mut rng)
            }
        })
        .collect();
    let norm = cnorm(&x);
    x.iter_mut().for_each(|c| *c /= norm);

    let mut residuals = Vec::new();
    let mut mu = Complex64::new(0.0, 0.0);
    for k in 1..=iters {
        let y = b.matvec(&x);
        let ynorm = cnorm(&y);
        if ynorm == 0.0 {
            return Err(LcError::DegenerateMatrix(
                "constant-part matrix annihilates the iterate".into(),
            ));
        }
        mu = x.iter().zip(&y).map(|(a, b)| a.conj() * b).sum();
        let res = if mu.norm() == 0.0 {
            f64::INFINITY
        } else {
            y.iter()
                .zip(&x)
                .map(|(yi, xi)| (yi - mu * xi).norm_sqr())
                .sum::<f64>()
                .sqrt()
                / mu.norm()
        };
        residuals.push(res);
        if res <= tol {
            let ratio = decay_rate(&residuals);
            if ratio > DOMINANCE_THRESHOLD {
                return Err(LcError::DominanceUncertain { estimate: mu, ratio });
            }
            return Ok(DominantEstimate {
                value: mu,
                ratio,
                iterations: k,
            });
        }
        x = y.into_iter().map(|c| c / ynorm).collect();
    }
    Err(LcError::DominanceUncertain {
        estimate: mu,
        ratio: decay_rate(&residuals),
    })
}

fn random_in_unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    let r: f64 = rng.gen::<f64>().sqrt();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// `A` rescaled so its dominant eigenvalue has constant part 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Preconditioned {
    pub matrix: LcMatrix,
    pub q0: Exponent,
    pub mu1: Complex64,
    pub dominance_ratio: f64,
}

pub fn precondition(a: &LcMatrix, cfg: &SolverConfig) -> Result<Preconditioned> {
    let q0 = a.min_valuation()?;
    let shifted = a.scale_by_monomial(-q0);
    let estimate = estimate_dominant_complex(
        &shifted.pi_matrix()?,
        cfg.complex_pi_iters,
        cfg.complex_pi_tol,
        cfg.seed,
    )?;
    let mu1 = estimate.value;
    if mu1.norm() == 0.0 {
        return Err(LcError::DegenerateMatrix("dominant constant eigenvalue is zero".into()));
    }
    Ok(Preconditioned {
        matrix: shifted.scale_coeffs(mu1.inv()),
        q0,
        mu1,
        dominance_ratio: estimate.ratio,
    })
}

/// Divides `x` by its norm. The flag reports a max-norm pivot tie.
fn normalize(x: &LcVector, norm: NormKind) -> Result<(LcVector, bool)> {
    let (value, tied) = match norm {
        NormKind::L2 => (x.norm_l2()?, false),
        NormKind::Max => {
            let m = x.norm_max()?;
            (m.value, m.tied)
        }
    };
    if value.lambda() != Some(Exponent::ZERO) {
        return Err(LcError::LostDominance { step: 0 });
    }
    Ok((x.scale_by(&value.inv()?), tied))
}

/// One power step: multiply, normalize, re-truncate.
pub fn power_step(
    a_norm: &LcMatrix,
    x: &LcVector,
    norm: NormKind,
    truncation: Exponent,
) -> Result<(LcVector, bool)> {
    let y = a_norm.matvec(x)?;
    let (z, tied) = normalize(&y, norm)?;
    Ok((z.truncate(ValidityBound::Finite(truncation)), tied))
}

/// Index of the entry with the largest constant-part modulus, first on ties.
fn pivot_index(x: &LcVector) -> usize {
    let mut best = (0, -1.0);
    for (i, e) in x.entries().iter().enumerate() {
        let m = e.coeff(Exponent::ZERO).norm();
        if m > best.1 {
            best = (i, m);
        }
    }
    best.0
}

/// Rotates `x` so the pivot entry's constant coefficient is real positive.
pub fn phase_align(x: &LcVector) -> LcVector {
    let c = x.get(pivot_index(x)).coeff(Exponent::ZERO);
    if c.norm() == 0.0 || (c.im == 0.0 && c.re > 0.0) {
        return x.clone();
    }
    x.scale_coeffs((c / c.norm()).conj())
}

/// Weakly Cauchy test on consecutive iterates and Rayleigh quotients.
pub fn weakly_converged(
    x_prev: &LcVector,
    x_curr: &LcVector,
    rho_prev: &LcNumber,
    rho_curr: &LcNumber,
    r: Exponent,
    tol: f64,
) -> Result<bool> {
    if (rho_curr - rho_prev).semi_norm(r)? >= tol {
        return Ok(false);
    }
    let diff = phase_align(x_curr).sub(&phase_align(x_prev))?;
    for d in diff.entries() {
        if d.semi_norm(r)? >= tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub step: usize,
    /// Normalized iterate `x_k / |x_k|`.
    pub vector: LcVector,
    /// Rayleigh quotient of the preconditioned matrix.
    pub rayleigh: LcNumber,
    /// The quotient mapped back to an eigenvalue estimate of the input.
    pub eigenvalue: LcNumber,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IterationTrace {
    pub steps: Vec<TraceStep>,
}

/// One row of a coefficient error table.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub step: usize,
    pub errors: Vec<f64>,
}

impl IterationTrace {
    pub fn last(&self) -> Option<&TraceStep> {
        self.steps.last()
    }

    /// Exponents of the final eigenvalue's support, joined with the
    /// reference's, capped at `cap` columns.
    pub fn default_columns(&self, reference: Option<&LcNumber>, cap: usize) -> Vec<Exponent> {
        let mut cols: Vec<Exponent> = self
            .last()
            .map(|s| s.eigenvalue.terms().iter().map(|(q, _)| *q).collect())
            .unwrap_or_default();
        if let Some(r) = reference {
            cols.extend(r.terms().iter().map(|(q, _)| *q));
        }
        cols.sort();
        cols.dedup();
        cols.truncate(cap);
        cols
    }

    /// `|nu_k[q] - ref[q]|` for every `every`-th step and the final one. The
    /// reference defaults to the final eigenvalue estimate.
    pub fn error_table(
        &self,
        reference: Option<&LcNumber>,
        columns: &[Exponent],
        every: usize,
    ) -> Vec<ErrorRow> {
        let Some(last) = self.last() else {
            return Vec::new();
        };
        let reference = reference.unwrap_or(&last.eigenvalue);
        let every = every.max(1);
        self.steps
            .iter()
            .filter(|s| s.step % every == 0 || s.step == last.step)
            .map(|s| ErrorRow {
                step: s.step,
                errors: columns
                    .iter()
                    .map(|q| (s.eigenvalue.coeff(*q) - reference.coeff(*q)).norm())
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult {
    pub eigenvalue: LcNumber,
    pub eigenvector: LcVector,
    pub q0: Exponent,
    pub mu1: Complex64,
    pub dominance_ratio: f64,
    pub iterations_used: usize,
    /// Step at which the weak Cauchy test first passed.
    pub converged_at: Option<usize>,
    pub converged: bool,
    pub pivot_tie_warning: bool,
    /// `max_i |(A' v - rho v)_i|_r` in the preconditioned frame, relative
    /// to `max_i |(A' v)_i|_r` when that exceeds 1.
    pub residual: f64,
    /// `|P(nu1)|_r` relative to the largest `|a_k nu1^k|_r`, polynomial runs only.
    pub polynomial_residual: Option<f64>,
}

/// `nu1 = rho * mu1 * d^q0`.
pub fn recover_eigenvalue(rho: &LcNumber, mu1: Complex64, q0: Exponent) -> LcNumber {
    rho.scale(mu1).scale_exponents(q0)
}

fn start_vector(start: &StartVector, n: usize) -> Result<LcVector> {
    match start {
        StartVector::Ones => Ok(LcVector::ones(n)),
        StartVector::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let values: Vec<Complex64> = (0..n).map(|_| random_in_unit_disk(&mut rng)).collect();
            Ok(LcVector::from_constants(&values))
        }
        StartVector::Given(v) => {
            if v.len() != n {
                return Err(LcError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            Ok(v.clone())
        }
    }
}

fn with_step(err: LcError, step: usize) -> LcError {
    match err {
        LcError::LostDominance { .. } => LcError::LostDominance { step },
        other => other,
    }
}

pub fn solve(a: &LcMatrix, cfg: &SolverConfig) -> Result<(EigenResult, IterationTrace)> {
    cfg.validate()?;
    let pre = precondition(a, cfg)?;
    let a_norm = &pre.matrix;
    let window = ValidityBound::Finite(cfg.truncation);
    let r = cfg.check_window;

    let x0 = start_vector(&cfg.start, a.dim())?.truncate(window);
    if x0.is_zero() {
        return Err(LcError::DegenerateVector("start vector is zero".into()));
    }
    let (mut x, mut tie_warning) = normalize(&x0, cfg.norm).map_err(|e| with_step(e, 0))?;
    x = x.truncate(window);
    let mut rho = a_norm.rayleigh_quotient(&x)?;
    let mut trace = IterationTrace::default();
    trace.steps.push(TraceStep {
        step: 0,
        vector: x.clone(),
        eigenvalue: recover_eigenvalue(&rho, pre.mu1, pre.q0),
        rayleigh: rho.clone(),
    });

    let mut converged_at = None;
    let mut steps = 0;
    for k in 1..=cfg.max_iters {
        let (next, tied) =
            power_step(a_norm, &x, cfg.norm, cfg.truncation).map_err(|e| with_step(e, k))?;
        tie_warning |= tied;
        let next_rho = a_norm.rayleigh_quotient(&next)?;
        let done = weakly_converged(&x, &next, &rho, &next_rho, r, cfg.tol)?;
        trace.steps.push(TraceStep {
            step: k,
            vector: next.clone(),
            eigenvalue: recover_eigenvalue(&next_rho, pre.mu1, pre.q0),
            rayleigh: next_rho.clone(),
        });
        x = next;
        rho = next_rho;
        steps = k;
        if done && converged_at.is_none() {
            converged_at = Some(k);
        }
        if done && cfg.stop_on_convergence {
            break;
        }
    }

    let v = phase_align(&x);
    let av = a_norm.matvec(&v)?;
    let defect = av.sub(&v.scale_by(&rho))?;
    let sup = |w: &LcVector| -> Result<f64> {
        Ok(w.entries()
            .iter()
            .map(|d| d.semi_norm(r))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max))
    };
    let residual = sup(&defect)? / sup(&av)?.max(1.0);

    let result = EigenResult {
        eigenvalue: recover_eigenvalue(&rho, pre.mu1, pre.q0),
        eigenvector: v,
        q0: pre.q0,
        mu1: pre.mu1,
        dominance_ratio: pre.dominance_ratio,
        iterations_used: steps,
        converged_at,
        converged: converged_at.is_some() && residual <= cfg.residual_tol,
        pivot_tie_warning: tie_warning,
        residual,
        polynomial_residual: None,
    };
    Ok((result, trace))
}

fn semi_norm_clamped(a: &LcNumber, r: Exponent) -> f64 {
    let r = match a.valid_to() {
        ValidityBound::Finite(b) => b.min(r),
        ValidityBound::Infinite => r,
    };
    a.semi_norm(r).expect("window clamped to the validity bound")
}

/// `|P(x)|_r / max_k |a_k x^k|_r` with `r` clamped to what the evaluation
/// certifies.
pub fn polynomial_residual(p: &Polynomial, x: &LcNumber, window: Exponent) -> f64 {
    let value = p.eval(x);
    let r = match value.valid_to() {
        ValidityBound::Finite(b) => b.min(window),
        ValidityBound::Infinite => window,
    };
    let mut power = LcNumber::one();
    let mut scale = 0.0f64;
    for a in p.coeffs() {
        scale = scale.max(semi_norm_clamped(&(a * &power), r));
        power = &power * x;
    }
    scale = scale.max(semi_norm_clamped(&power, r));
    let num = semi_norm_clamped(&value, r);
    if scale == 0.0 {
        num
    } else {
        num / scale
    }
}

/// Dominant root of a monic polynomial through its companion matrix.
pub fn poly_dominant_root(
    p: &Polynomial,
    cfg: &SolverConfig,
) -> Result<(EigenResult, IterationTrace)> {
    let (mut result, trace) = solve(&p.companion_matrix(), cfg)?;
    // an infinitely large root loses |q0| of window per power
    let loss = result
        .q0
        .min(Exponent::ZERO)
        .checked_mul_int(p.degree() as i64)
        .ok_or(LcError::ExponentOverflow)?;
    let window = cfg.check_window + result.q0.max(Exponent::ZERO) + loss;
    let rel = polynomial_residual(p, &result.eigenvalue, window);
    result.polynomial_residual = Some(rel);
    result.converged &= rel <= cfg.residual_tol;
    Ok((result, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::eig2x2_symbolic;
    use crate::text::{c64, parse_matrix, parse_polynomial, parse_series};

    fn series(s: &str) -> LcNumber {
        parse_series(s).unwrap()
    }

    fn e(n: i64) -> Exponent {
        Exponent::integer(n)
    }

    #[test]
    fn dominant_complex_estimates() {
        let b = ComplexMatrix::from_real_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]);
        let est = estimate_dominant_complex(&b, 20_000, 1e-12, 0).unwrap();
        assert!((est.value - c64(2.0, 0.0)).norm() < 1e-10);
        assert!((est.ratio - 0.5).abs() < 0.05);

        let swap = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(matches!(
            estimate_dominant_complex(&swap, 20_000, 1e-12, 0),
            Err(LcError::DominanceUncertain { .. })
        ));
        let zero = ComplexMatrix::from_real_rows(&[vec![0.0]]);
        assert!(estimate_dominant_complex(&zero, 10, 1e-12, 0).is_err());
    }

    #[test]
    fn precondition_shifts_and_scales() {
        let a = parse_matrix("100; 1*t\n0; 100").unwrap();
        let pre = precondition(&a, &SolverConfig::default()).unwrap();
        assert_eq!(pre.q0, Exponent::ZERO);
        assert!((pre.mu1 - c64(100.0, 0.0)).norm() < 1e-8);

        let b = parse_matrix("3*t^2; 0\n0; 1*t^2").unwrap();
        let pre = precondition(&b, &SolverConfig::default()).unwrap();
        assert_eq!(pre.q0, e(2));
        assert!((pre.mu1 - c64(3.0, 0.0)).norm() < 1e-8);
        assert!((pre.matrix.get(0, 0).coeff(Exponent::ZERO) - c64(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn power_step_examples() {
        let a = parse_matrix("1; 0\n0; 0.5").unwrap();
        let (x, _) = power_step(&a, &LcVector::ones(2), NormKind::Max, e(9)).unwrap();
        assert!((x.get(0).coeff(Exponent::ZERO) - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((x.get(1).coeff(Exponent::ZERO) - c64(0.5, 0.0)).norm() < 1e-15);

        let id = LcMatrix::identity(3);
        let v = LcVector::ones(3);
        let (x, _) = power_step(&id, &v, NormKind::Max, e(9)).unwrap();
        assert_eq!(x, v.truncate(ValidityBound::Finite(e(9))));

        let upper = parse_matrix("1; 1*t\n0; 0.5").unwrap();
        let (x, _) = power_step(&upper, &LcVector::unit(2, 0), NormKind::L2, e(9)).unwrap();
        assert!(x.get(1).is_zero());
    }

    #[test]
    fn weak_convergence_examples() {
        let x = LcVector::ones(2);
        let one = LcNumber::one();
        assert!(weakly_converged(&x, &x, &one, &one, e(3), 1e-12).unwrap());
        let y = LcVector::new(vec![series("1 + 1e-3*t^2"), LcNumber::one()]).unwrap();
        assert!(!weakly_converged(&x, &y, &one, &one, e(3), 1e-12).unwrap());
        // differences beyond the window are invisible
        assert!(weakly_converged(&x, &y, &one, &one, e(1), 1e-12).unwrap());
        let rho = series("1 + 1*t");
        assert!(!weakly_converged(&x, &x, &one, &rho, e(1), 1e-12).unwrap());
        // a global phase flip is not a difference
        let neg = x.scale_coeffs(c64(-1.0, 0.0));
        assert!(weakly_converged(&x, &neg, &one, &one, e(3), 1e-12).unwrap());
    }

    #[test]
    fn solves_diagonal() {
        let a = parse_matrix("2 + 1*t; 0\n0; 1").unwrap();
        let (r, trace) = solve(&a, &SolverConfig::with_truncation(e(4))).unwrap();
        assert!(r.converged);
        assert!(r.eigenvalue.eq_up_to(&series("2 + 1*t"), e(4), 1e-10).unwrap());
        assert!(r.eigenvector.get(1).semi_norm(e(4)).unwrap() < 1e-10);
        assert_eq!(trace.steps[0].step, 0);
        assert_eq!(trace.last().unwrap().step, r.iterations_used);
    }

    #[test]
    fn solves_symmetric_against_oracle() {
        let a = parse_matrix("2; 1*t\n1*t; 1").unwrap();
        let (r, _) = solve(&a, &SolverConfig::with_truncation(e(6))).unwrap();
        let (nu1, _) = eig2x2_symbolic(&a, e(6)).unwrap();
        assert!(r.eigenvalue.eq_up_to(&nu1, e(6), 1e-10).unwrap());
        assert!(r.eigenvalue.eq_up_to(&series("2 + 1*t^2 - 1*t^4 + 2*t^6"), e(6), 1e-10).unwrap());
    }

    #[test]
    fn infinitely_large_dominant_eigenvalue() {
        let a = parse_matrix("1*t^-1; 1\n0; 1").unwrap();
        let (r, _) = solve(&a, &SolverConfig::with_truncation(e(4))).unwrap();
        assert_eq!(r.q0, e(-1));
        assert!(r.eigenvalue.eq_up_to(&series("1*t^-1"), e(3), 1e-10).unwrap());
    }

    #[test]
    fn polynomial_roots() {
        let p = parse_polynomial("poly: -3 - 1*t").unwrap();
        let (r, _) = poly_dominant_root(&p, &SolverConfig::with_truncation(e(5))).unwrap();
        assert!(r.eigenvalue.eq_up_to(&series("3 + 1*t"), e(5), 1e-10).unwrap());
        assert!(r.polynomial_residual.unwrap() < 1e-10);

        let q = Polynomial::from_roots(&[series("2"), series("1")]).unwrap();
        let (r, _) = poly_dominant_root(&q, &SolverConfig::with_truncation(e(3))).unwrap();
        assert!((r.eigenvalue.coeff(Exponent::ZERO) - c64(2.0, 0.0)).norm() < 1e-10);
        assert!(r.converged);
    }

    #[test]
    fn start_scale_does_not_matter() {
        let a = parse_matrix("3; 1*t\n1; 1").unwrap();
        let mut cfg = SolverConfig::with_truncation(e(5));
        let v = LcVector::new(vec![series("1"), series("2 + 1*t")]).unwrap();
        cfg.start = StartVector::Given(v.clone());
        let (r1, _) = solve(&a, &cfg).unwrap();
        cfg.start = StartVector::Given(v.scale_coeffs(c64(0.0, -7.5)));
        let (r2, _) = solve(&a, &cfg).unwrap();
        assert!(r1.eigenvalue.eq_up_to(&r2.eigenvalue, e(5), 1e-10).unwrap());
    }

    #[test]
    fn rejects_bad_configs_and_starts() {
        let a = parse_matrix("2; 0\n0; 1").unwrap();
        let cfg = SolverConfig {
            tol: 0.0,
            ..Default::default()
        };
        assert!(matches!(solve(&a, &cfg), Err(LcError::Config(_))));
        let mut cfg = SolverConfig {
            start: StartVector::Given(LcVector::ones(3)),
            ..Default::default()
        };
        assert!(matches!(solve(&a, &cfg), Err(LcError::DimensionMismatch { .. })));
        cfg.start = StartVector::Given(LcVector::new(vec![LcNumber::zero(), LcNumber::zero()]).unwrap());
        assert!(matches!(solve(&a, &cfg), Err(LcError::DegenerateVector(_))));
    }

    #[test]
    fn recovery_identity() {
        let rho = series("1 + 2*t");
        let nu = recover_eigenvalue(&rho, c64(3.0, 0.0), e(-2));
        assert_eq!(nu, series("3*t^-2 + 6*t^-1"));
    }
}
