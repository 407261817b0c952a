//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | internal error |
//! | 2 | usage or configuration error |
//! | 3 | input parse error |
//! | 4 | dominance uncertain, or dominance lost during iteration |
//! | 5 | iteration did not converge (outputs are still written) |
//! | 6 | file could not be read or written |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::{apply_config, parse_exponent, parse_norm, parse_start};
use crate::eigensolver::{poly_dominant_root, solve, EigenResult, IterationTrace, SolverConfig};
use crate::error::LcError;
use crate::exponent::{Exponent, ValidityBound};
use crate::linalg::{all_eigenvalues_at_most_finite, Disk, LcMatrix};
use crate::number::LcNumber;
use crate::text::{format_series, parse_matrix, parse_polynomial, parse_series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DOMINANCE: i32 = 4;
pub const EXIT_NOT_CONVERGED: i32 = 5;
pub const EXIT_IO: i32 = 6;

#[derive(Parser, Debug)]
#[command(name = "lc-power", version, about = "Dominant eigenpairs over the Levi-Civita field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dominant eigenvalue and eigenvector of a matrix.
    SolveMatrix {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Dominant root of a monic polynomial.
    PolyRoot {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Gershgorin disks and the at-most-finite verdict.
    Gershgorin {
        file: PathBuf,
        /// Truncation applied when an entry's modulus needs a square root.
        #[arg(long)]
        truncation: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default)]
struct SolveOpts {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Truncation order, e.g. 9 or 1/2.
    #[arg(long)]
    truncation: Option<String>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// l2 or max.
    #[arg(long)]
    norm: Option<String>,
    /// ones, random:SEED or file:PATH.
    #[arg(long)]
    start: Option<String>,
    /// Exponent window of the convergence test; defaults to the truncation.
    #[arg(long)]
    check_window: Option<String>,
    /// Seed for the constant-part eigenvalue estimate.
    #[arg(long)]
    seed: Option<u64>,
    /// Known solution; the trace table reports errors against it.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    sample_every: usize,
    #[arg(long, default_value_t = 12)]
    max_columns: usize,
    /// Keep iterating to max-iters after the convergence test passes.
    #[arg(long)]
    run_all: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Matrix,
    Polynomial,
}

/// Everything one solver run needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub kind: InputKind,
    pub input: PathBuf,
    pub config: SolverConfig,
    pub out: Option<PathBuf>,
    pub trace_out: Option<PathBuf>,
    pub reference: Option<PathBuf>,
    pub sample_every: usize,
    pub max_columns: usize,
}

impl RunManifest {
    pub fn new(kind: InputKind, input: impl Into<PathBuf>, config: SolverConfig) -> Self {
        RunManifest {
            kind,
            input: input.into(),
            config,
            out: None,
            trace_out: None,
            reference: None,
            sample_every: 10,
            max_columns: 12,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.config.validate().map_err(CliError::Lc)?;
        let mut paths: Vec<&Path> = vec![&self.input];
        paths.extend(self.out.as_deref());
        paths.extend(self.trace_out.as_deref());
        paths.extend(self.reference.as_deref());
        for (i, p) in paths.iter().enumerate() {
            if paths[..i].contains(p) {
                return Err(CliError::Usage(format!("path {} is used twice", p.display())));
            }
        }
        if self.sample_every == 0 || self.max_columns == 0 {
            return Err(CliError::Usage("sample-every and max-columns must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: LcError },
    #[error(transparent)]
    Lc(LcError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let lc = match self {
            CliError::Usage(_) => return EXIT_USAGE,
            CliError::Io { .. } => return EXIT_IO,
            CliError::Input { source, .. } => source,
            CliError::Lc(e) => e,
        };
        match lc {
            LcError::Parse { .. } | LcError::ExponentOverflow => EXIT_PARSE,
            LcError::Domain(_) | LcError::DimensionMismatch { .. } if matches!(self, CliError::Input { .. }) => {
                EXIT_PARSE
            }
            LcError::Config(_) => EXIT_USAGE,
            LcError::DominanceUncertain { .. } | LcError::LostDominance { .. } => EXIT_DOMINANCE,
            _ => EXIT_INTERNAL,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn input_err(path: &Path) -> impl FnOnce(LcError) -> CliError + '_ {
    move |source| CliError::Input {
        path: path.to_path_buf(),
        source,
    }
}

fn build_manifest(kind: InputKind, file: PathBuf, opts: SolveOpts) -> Result<RunManifest, CliError> {
    let mut cfg = SolverConfig::default();
    let mut window_set = false;
    if let Some(path) = &opts.config {
        let text = read(path)?;
        window_set = apply_config(&mut cfg, &text, path.parent()).map_err(input_err(path))?;
    }
    if let Some(t) = &opts.truncation {
        cfg.truncation = parse_exponent(t).map_err(CliError::Lc)?;
    }
    if let Some(w) = &opts.check_window {
        cfg.check_window = parse_exponent(w).map_err(CliError::Lc)?;
        window_set = true;
    }
    if !window_set {
        cfg.check_window = cfg.truncation;
    }
    if let Some(n) = opts.max_iters {
        cfg.max_iters = n;
    }
    if let Some(tol) = opts.tol {
        cfg.tol = tol;
    }
    if let Some(norm) = &opts.norm {
        cfg.norm = parse_norm(norm).map_err(CliError::Lc)?;
    }
    if let Some(start) = &opts.start {
        cfg.start = parse_start(start, None).map_err(|e| match e {
            LcError::Config(m) => CliError::Usage(m),
            other => CliError::Lc(other),
        })?;
    }
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    if opts.run_all {
        cfg.stop_on_convergence = false;
    }
    let manifest = RunManifest {
        kind,
        input: file,
        config: cfg,
        out: opts.out,
        trace_out: opts.trace_out,
        reference: opts.reference,
        sample_every: opts.sample_every,
        max_columns: opts.max_columns,
    };
    manifest.validate()?;
    Ok(manifest)
}

#[derive(Serialize)]
struct ComplexDoc {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ResultDocument {
    kind: InputKind,
    eigenvalue: String,
    eigenvector: Vec<String>,
    q0: String,
    mu1: ComplexDoc,
    dominance_ratio: f64,
    truncation: String,
    iterations: usize,
    converged_at: Option<usize>,
    converged: bool,
    pivot_tie_warning: bool,
    residual: f64,
    polynomial_residual: Option<f64>,
}

impl ResultDocument {
    fn new(kind: InputKind, r: &EigenResult, cfg: &SolverConfig) -> Self {
        ResultDocument {
            kind,
            eigenvalue: format_series(&r.eigenvalue),
            eigenvector: r.eigenvector.entries().iter().map(format_series).collect(),
            q0: r.q0.to_string(),
            mu1: ComplexDoc {
                re: r.mu1.re,
                im: r.mu1.im,
            },
            dominance_ratio: r.dominance_ratio,
            truncation: cfg.truncation.to_string(),
            iterations: r.iterations_used,
            converged_at: r.converged_at,
            converged: r.converged,
            pivot_tie_warning: r.pivot_tie_warning,
            residual: r.residual,
            polynomial_residual: r.polynomial_residual,
        }
    }
}

/// `1.85048e-03`: five decimals, signed two-digit exponent.
pub fn format_sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.5e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn column_label(q: Exponent) -> String {
    if q.is_integer() {
        format!("t^{q}")
    } else {
        format!("t^({q})")
    }
}

/// The error table as CSV with a `step,t^q1,...` header.
pub fn trace_csv(
    trace: &IterationTrace,
    reference: Option<&LcNumber>,
    every: usize,
    max_columns: usize,
) -> String {
    let columns = trace.default_columns(reference, max_columns);
    let mut out = String::from("step");
    for q in &columns {
        out.push(',');
        out.push_str(&column_label(*q));
    }
    out.push('\n');
    for row in trace.error_table(reference, &columns, every) {
        out.push_str(&row.step.to_string());
        for e in row.errors {
            out.push(',');
            out.push_str(&format_sci(e));
        }
        out.push('\n');
    }
    out
}

fn summary(r: &EigenResult) -> String {
    let mut s = format!(
        "eigenvalue: {}\nq0: {}\nmu1: {}\niterations: {}\n",
        format_series(&r.eigenvalue),
        r.q0,
        format_series(&LcNumber::constant(r.mu1)),
        r.iterations_used,
    );
    match r.converged_at {
        Some(k) => s.push_str(&format!("convergence test passed at step {k}\n")),
        None => s.push_str("convergence test never passed\n"),
    }
    s.push_str(&format!("residual: {}\n", format_sci(r.residual)));
    if let Some(p) = r.polynomial_residual {
        s.push_str(&format!("polynomial residual: {}\n", format_sci(p)));
    }
    if r.pivot_tie_warning {
        s.push_str("warning: max-norm pivot tie encountered\n");
    }
    s.push_str(&format!("converged: {}\n", r.converged));
    s
}

/// Runs one solver manifest, writing the outputs it names. Returns the
/// summary printed by the CLI and whether the run converged.
pub fn cmd_solve(manifest: &RunManifest) -> Result<(String, bool), CliError> {
    manifest.validate()?;
    let text = read(&manifest.input)?;
    let reference = match &manifest.reference {
        Some(path) => Some(parse_series(&read(path)?).map_err(input_err(path))?),
        None => None,
    };
    let (result, trace) = match manifest.kind {
        InputKind::Matrix => {
            let a = parse_matrix(&text).map_err(input_err(&manifest.input))?;
            solve(&a, &manifest.config)
        }
        InputKind::Polynomial => {
            let p = parse_polynomial(&text).map_err(input_err(&manifest.input))?;
            poly_dominant_root(&p, &manifest.config)
        }
    }
    .map_err(CliError::Lc)?;

    if let Some(path) = &manifest.out {
        let doc = ResultDocument::new(manifest.kind, &result, &manifest.config);
        let mut json = serde_json::to_string_pretty(&doc)
            .map_err(|e| CliError::Usage(format!("cannot serialize result: {e}")))?;
        json.push('\n');
        write(path, &json)?;
    }
    if let Some(path) = &manifest.trace_out {
        let csv = trace_csv(&trace, reference.as_ref(), manifest.sample_every, manifest.max_columns);
        write(path, &csv)?;
    }
    Ok((summary(&result), result.converged))
}

fn disks_at(a: &LcMatrix, truncation: Option<Exponent>) -> Result<(Vec<Disk>, Option<Exponent>), LcError> {
    if let Some(t) = truncation {
        return Ok((a.truncate(ValidityBound::Finite(t)).gershgorin_disks()?, Some(t)));
    }
    match a.gershgorin_disks() {
        Err(LcError::InsufficientPrecision(_)) => {
            let t = SolverConfig::default().truncation;
            Ok((a.truncate(ValidityBound::Finite(t)).gershgorin_disks()?, Some(t)))
        }
        other => Ok((other?, None)),
    }
}

/// Gershgorin report for the matrix in `file`.
pub fn cmd_gershgorin(file: &Path, truncation: Option<Exponent>) -> Result<String, CliError> {
    let a = parse_matrix(&read(file)?).map_err(input_err(file))?;
    let (disks, used) = disks_at(&a, truncation).map_err(CliError::Lc)?;
    let mut out = String::new();
    if let Some(t) = used {
        out.push_str(&format!("entries truncated at t^{t}\n"));
    }
    for (i, d) in disks.iter().enumerate() {
        out.push_str(&format!(
            "disk {i}: center = {}, radius = {}\n",
            format_series(&d.center),
            format_series(&d.radius)
        ));
    }
    if all_eigenvalues_at_most_finite(&disks) {
        out.push_str("verdict: all eigenvalues at most finite\n");
    } else {
        out.push_str("verdict: not certified at most finite\n");
    }
    Ok(out)
}

fn dispatch(cli: Cli) -> Result<(String, i32), CliError> {
    match cli.command {
        Command::SolveMatrix { file, opts } => {
            let (s, ok) = cmd_solve(&build_manifest(InputKind::Matrix, file, opts)?)?;
            Ok((s, if ok { EXIT_OK } else { EXIT_NOT_CONVERGED }))
        }
        Command::PolyRoot { file, opts } => {
            let (s, ok) = cmd_solve(&build_manifest(InputKind::Polynomial, file, opts)?)?;
            Ok((s, if ok { EXIT_OK } else { EXIT_NOT_CONVERGED }))
        }
        Command::Gershgorin {
            file,
            truncation,
            out,
        } => {
            let t = truncation
                .as_deref()
                .map(parse_exponent)
                .transpose()
                .map_err(CliError::Lc)?;
            let report = cmd_gershgorin(&file, t)?;
            if let Some(path) = out {
                if path == file {
                    return Err(CliError::Usage("output would overwrite the input".into()));
                }
                write(&path, &report)?;
            }
            Ok((report, EXIT_OK))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            if code == EXIT_NOT_CONVERGED {
                let _ = writeln!(stderr, "error: iteration did not converge");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
