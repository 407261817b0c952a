//! Python bindings: series arithmetic, the matrix and polynomial solvers,
//! and Gershgorin reports. Matrices and polynomials are passed as text in
//! the same grammar the CLI reads.

use lc_power::config::{parse_exponent, parse_norm, parse_start};
use lc_power::eigensolver::{IterationTrace, SolverConfig};
use lc_power::{cli, Exponent, LcNumber, ValidityBound};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(pylcpower, LcError, PyValueError);

fn err(e: lc_power::LcError) -> PyErr {
    LcError::new_err(e.to_string())
}

/// An exponent given as an int or as text such as "1/2".
#[derive(FromPyObject)]
enum ExpArg {
    Int(i64),
    Text(String),
}

impl ExpArg {
    fn get(&self) -> PyResult<Exponent> {
        match self {
            ExpArg::Int(n) => Ok(Exponent::integer(*n)),
            ExpArg::Text(s) => parse_exponent(s).map_err(err),
        }
    }
}

/// A truncated Levi-Civita number.
#[pyclass(name = "Series", module = "pylcpower", frozen, from_py_object)]
#[derive(Clone)]
struct Series {
    inner: LcNumber,
}

#[derive(FromPyObject)]
enum Operand {
    Series(Series),
    Number(Complex64),
}

impl Operand {
    fn value(self) -> LcNumber {
        match self {
            Operand::Series(s) => s.inner,
            Operand::Number(c) => LcNumber::constant(c),
        }
    }
}

fn wrap(inner: LcNumber) -> Series {
    Series { inner }
}

#[pymethods]
impl Series {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        lc_power::parse_series(text).map(wrap).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series('{}', valid_to={})", self.inner, self.inner.valid_to())
    }

    fn __eq__(&self, other: Operand) -> bool {
        self.inner == other.value()
    }

    fn __add__(&self, other: Operand) -> Series {
        wrap(&self.inner + &other.value())
    }

    fn __radd__(&self, other: Operand) -> Series {
        wrap(&other.value() + &self.inner)
    }

    fn __sub__(&self, other: Operand) -> Series {
        wrap(&self.inner - &other.value())
    }

    fn __rsub__(&self, other: Operand) -> Series {
        wrap(&other.value() - &self.inner)
    }

    fn __mul__(&self, other: Operand) -> Series {
        wrap(&self.inner * &other.value())
    }

    fn __rmul__(&self, other: Operand) -> Series {
        wrap(&other.value() * &self.inner)
    }

    fn __truediv__(&self, other: Operand) -> PyResult<Series> {
        let inv = other.value().inv().map_err(err)?;
        Ok(wrap(&self.inner * &inv))
    }

    fn __rtruediv__(&self, other: Operand) -> PyResult<Series> {
        let inv = self.inner.inv().map_err(err)?;
        Ok(wrap(&other.value() * &inv))
    }

    fn __neg__(&self) -> Series {
        wrap(-&self.inner)
    }

    fn inv(&self) -> PyResult<Series> {
        self.inner.inv().map(wrap).map_err(err)
    }

    fn sqrt(&self) -> PyResult<Series> {
        self.inner.sqrt_real().map(wrap).map_err(err)
    }

    fn abs(&self) -> PyResult<Series> {
        self.inner.abs_complex().map(wrap).map_err(err)
    }

    fn conj(&self) -> Series {
        wrap(self.inner.conj())
    }

    /// Leading exponent as `(numerator, denominator)`, `None` for zero.
    fn valuation(&self) -> Option<(i64, i64)> {
        self.inner.lambda().map(|q| (q.numerator(), q.denominator()))
    }

    fn coeff(&self, q: ExpArg) -> PyResult<Complex64> {
        Ok(self.inner.coeff(q.get()?))
    }

    fn terms(&self) -> Vec<((i64, i64), Complex64)> {
        self.inner
            .terms()
            .iter()
            .map(|(q, c)| ((q.numerator(), q.denominator()), *c))
            .collect()
    }

    /// Validity bound as text, `"+inf"` when exact.
    #[getter]
    fn valid_to(&self) -> String {
        self.inner.valid_to().to_string()
    }

    fn truncate(&self, q: ExpArg) -> PyResult<Series> {
        Ok(wrap(self.inner.truncate(ValidityBound::Finite(q.get()?))))
    }

    fn semi_norm(&self, r: ExpArg) -> PyResult<f64> {
        self.inner.semi_norm(r.get()?).map_err(err)
    }

    /// Field order comparison of real numbers: -1, 0 or 1.
    fn cmp(&self, other: Operand) -> PyResult<i8> {
        self.inner
            .cmp_order(&other.value())
            .map(|o| o as i8)
            .map_err(err)
    }
}

#[pyclass(module = "pylcpower", frozen)]
struct SolveResult {
    #[pyo3(get)]
    eigenvalue: Series,
    #[pyo3(get)]
    eigenvector: Vec<Series>,
    #[pyo3(get)]
    q0: String,
    #[pyo3(get)]
    mu1: Complex64,
    #[pyo3(get)]
    dominance_ratio: f64,
    #[pyo3(get)]
    iterations: usize,
    #[pyo3(get)]
    converged_at: Option<usize>,
    #[pyo3(get)]
    converged: bool,
    #[pyo3(get)]
    pivot_tie_warning: bool,
    #[pyo3(get)]
    residual: f64,
    #[pyo3(get)]
    polynomial_residual: Option<f64>,
    trace: IterationTrace,
}

#[pymethods]
impl SolveResult {
    /// The coefficient error table as CSV.
    #[pyo3(signature = (reference=None, every=10, max_columns=12))]
    fn trace_csv(&self, reference: Option<Series>, every: usize, max_columns: usize) -> String {
        cli::trace_csv(&self.trace, reference.as_ref().map(|s| &s.inner), every, max_columns)
    }

    fn __repr__(&self) -> String {
        format!(
            "SolveResult(eigenvalue='{}', iterations={}, converged={})",
            self.eigenvalue.inner, self.iterations, self.converged
        )
    }
}

fn config(
    truncation: ExpArg,
    max_iters: usize,
    tol: f64,
    norm: &str,
    start: &str,
    run_all: bool,
) -> PyResult<SolverConfig> {
    let mut cfg = SolverConfig::with_truncation(truncation.get()?);
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    cfg.norm = parse_norm(norm).map_err(err)?;
    cfg.start = parse_start(start, None).map_err(err)?;
    cfg.stop_on_convergence = !run_all;
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

fn finish(
    (r, trace): (lc_power::EigenResult, IterationTrace),
) -> SolveResult {
    SolveResult {
        eigenvalue: wrap(r.eigenvalue),
        eigenvector: r.eigenvector.entries().iter().cloned().map(wrap).collect(),
        q0: r.q0.to_string(),
        mu1: r.mu1,
        dominance_ratio: r.dominance_ratio,
        iterations: r.iterations_used,
        converged_at: r.converged_at,
        converged: r.converged,
        pivot_tie_warning: r.pivot_tie_warning,
        residual: r.residual,
        polynomial_residual: r.polynomial_residual,
        trace,
    }
}

/// Dominant eigenpair of the matrix in `text` (rows on lines, `;` between entries).
#[pyfunction]
#[pyo3(signature = (text, truncation=ExpArg::Int(9), max_iters=500, tol=1e-12, norm="l2", start="ones", run_all=false))]
fn solve_matrix(
    text: &str,
    truncation: ExpArg,
    max_iters: usize,
    tol: f64,
    norm: &str,
    start: &str,
    run_all: bool,
) -> PyResult<SolveResult> {
    let cfg = config(truncation, max_iters, tol, norm, start, run_all)?;
    let a = lc_power::parse_matrix(text).map_err(err)?;
    lc_power::solve(&a, &cfg).map(finish).map_err(err)
}

/// Dominant root of the monic polynomial in `text` (`poly: a0; a1; ...`).
#[pyfunction]
#[pyo3(signature = (text, truncation=ExpArg::Int(9), max_iters=500, tol=1e-12, norm="l2", start="ones", run_all=false))]
fn poly_root(
    text: &str,
    truncation: ExpArg,
    max_iters: usize,
    tol: f64,
    norm: &str,
    start: &str,
    run_all: bool,
) -> PyResult<SolveResult> {
    let cfg = config(truncation, max_iters, tol, norm, start, run_all)?;
    let p = lc_power::parse_polynomial(text).map_err(err)?;
    lc_power::poly_dominant_root(&p, &cfg).map(finish).map_err(err)
}

/// Gershgorin disks as `(center, radius)` pairs and the at-most-finite verdict.
#[pyfunction]
#[pyo3(signature = (text, truncation=None))]
fn gershgorin(text: &str, truncation: Option<ExpArg>) -> PyResult<(Vec<(Series, Series)>, bool)> {
    let mut a = lc_power::parse_matrix(text).map_err(err)?;
    if let Some(t) = truncation {
        a = a.truncate(ValidityBound::Finite(t.get()?));
    }
    let disks = a.gershgorin_disks().map_err(err)?;
    let verdict = lc_power::all_eigenvalues_at_most_finite(&disks);
    Ok((
        disks.into_iter().map(|d| (wrap(d.center), wrap(d.radius))).collect(),
        verdict,
    ))
}

#[pymodule]
fn pylcpower(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_class::<SolveResult>()?;
    m.add_function(wrap_pyfunction!(solve_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(poly_root, m)?)?;
    m.add_function(wrap_pyfunction!(gershgorin, m)?)?;
    m.add("LcError", m.py().get_type::<LcError>())?;
    Ok(())
}
