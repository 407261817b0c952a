//! Solver configuration documents: `key = value` lines, `#` comments.
//!
//! ```text
//! truncation = 9
//! max_iters = 100
//! tol = 1e-12
//! check_window = 9
//! norm = l2
//! start = random:42
//! complex_pi_iters = 20000
//! complex_pi_tol = 1e-12
//! ```

use std::path::Path;

use crate::eigensolver::{NormKind, SolverConfig, StartVector};
use crate::error::{LcError, Result};
use crate::exponent::Exponent;
use crate::text::parse_vector;

/// `9`, `-1`, `1/2` or `(1/2)`.
pub fn parse_exponent(text: &str) -> Result<Exponent> {
    let t = text.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    let bad = || LcError::Config(format!("invalid exponent '{text}'"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den <= 0 {
        return Err(bad());
    }
    Exponent::new(num, den)
}

pub fn parse_norm(text: &str) -> Result<NormKind> {
    match text.trim() {
        "l2" | "L2" => Ok(NormKind::L2),
        "max" => Ok(NormKind::Max),
        other => Err(LcError::Config(format!("unknown norm '{other}', expected l2 or max"))),
    }
}

/// `ones`, `random:SEED` or `file:PATH`; relative paths resolve against `base`.
pub fn parse_start(text: &str, base: Option<&Path>) -> Result<StartVector> {
    let t = text.trim();
    if t == "ones" {
        return Ok(StartVector::Ones);
    }
    if let Some(seed) = t.strip_prefix("random:") {
        let seed = seed
            .trim()
            .parse()
            .map_err(|_| LcError::Config(format!("invalid seed in '{t}'")))?;
        return Ok(StartVector::Random(seed));
    }
    if let Some(path) = t.strip_prefix("file:") {
        let path = Path::new(path.trim());
        let full = match base {
            Some(b) if path.is_relative() => b.join(path),
            _ => path.to_path_buf(),
        };
        let text = std::fs::read_to_string(&full)
            .map_err(|e| LcError::Config(format!("cannot read start vector {}: {e}", full.display())))?;
        return Ok(StartVector::Given(parse_vector(&text)?));
    }
    Err(LcError::Config(format!(
        "unknown start '{t}', expected ones, random:SEED or file:PATH"
    )))
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| LcError::Config(format!("invalid value '{value}' for {key}")))
}

/// Applies a configuration document on top of `cfg`. Unknown keys are errors.
/// Returns whether the document set `check_window`.
pub fn apply_config(cfg: &mut SolverConfig, text: &str, base: Option<&Path>) -> Result<bool> {
    let mut window_set = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            LcError::Config(format!("line {}: expected key = value", lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "truncation" => cfg.truncation = parse_exponent(value)?,
            "max_iters" => cfg.max_iters = parse_value(key, value)?,
            "tol" => cfg.tol = parse_value(key, value)?,
            "check_window" => {
                cfg.check_window = parse_exponent(value)?;
                window_set = true;
            }
            "norm" => cfg.norm = parse_norm(value)?,
            "start" => cfg.start = parse_start(value, base)?,
            "complex_pi_iters" => cfg.complex_pi_iters = parse_value(key, value)?,
            "complex_pi_tol" => cfg.complex_pi_tol = parse_value(key, value)?,
            "residual_tol" => cfg.residual_tol = parse_value(key, value)?,
            "seed" => cfg.seed = parse_value(key, value)?,
            "stop_on_convergence" => cfg.stop_on_convergence = parse_value(key, value)?,
            other => {
                return Err(LcError::Config(format!(
                    "line {}: unknown key '{other}'",
                    lineno + 1
                )))
            }
        }
    }
    Ok(window_set)
}

/// The check window defaults to the truncation order.
pub fn parse_config(text: &str, base: Option<&Path>) -> Result<SolverConfig> {
    let mut cfg = SolverConfig::default();
    if !apply_config(&mut cfg, text, base)? {
        cfg.check_window = cfg.truncation;
    }
    cfg.validate()?;
    Ok(cfg)
}
