//! Matrix-level randomized suites built on the oracles.

use lc_power::oracles::{charpoly_roots_complex, eig2x2_symbolic};
use lc_power::text::c64;
use lc_power::{
    all_eigenvalues_at_most_finite, solve, Coeff, LcMatrix, LcNumber, LcVector, SolverConfig,
    ValidityBound,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{at_most_finite, e, multiset_distance, rng, series, similar_to_diagonal};

type Check = Result<usize, String>;

/// `c + (terms of positive order)`, valid to `bound`.
fn entry(g: &mut ChaCha8Rng, bound: i64, constant: f64) -> LcNumber {
    let tail = if g.gen_bool(0.7) {
        series(g, 1, 3, bound, false)
    } else {
        LcNumber::zero().truncate(ValidityBound::Finite(e(bound)))
    };
    &LcNumber::real(constant) + &tail
}

/// Real 2x2 at-most-finite matrix whose constant part has real eigenvalues
/// `mu1`, `mu2` with `|mu2 / mu1| <= max_ratio` and `|mu1| >= 0.5`.
pub fn dominant_2x2(g: &mut ChaCha8Rng, bound: i64, max_ratio: f64) -> LcMatrix {
    loop {
        let c: Vec<f64> = (0..4).map(|_| g.gen_range(-3.0..3.0)).collect();
        let (tr, det) = (c[0] + c[3], c[0] * c[3] - c[1] * c[2]);
        let disc = tr * tr - 4.0 * det;
        if disc <= 0.25 {
            continue;
        }
        let (r1, r2) = ((tr + disc.sqrt()) / 2.0, (tr - disc.sqrt()) / 2.0);
        let (big, small) = if r1.abs() >= r2.abs() { (r1, r2) } else { (r2, r1) };
        if big.abs() < 0.5 || small.abs() > max_ratio * big.abs() {
            continue;
        }
        let entries: Vec<LcNumber> = c.iter().map(|&x| entry(g, bound, x)).collect();
        return LcMatrix::from_fn(2, |i, j| entries[2 * i + j].clone());
    }
}

/// Criterion: solve agrees with the quadratic-formula oracle.
pub fn oracle_equivalence(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    let cfg = SolverConfig::with_truncation(e(6));
    for case in 0..cases {
        let a = dominant_2x2(&mut g, 8, 0.8);
        let (nu1, _) = eig2x2_symbolic(&a, e(6)).map_err(|err| format!("oracle: {err}"))?;
        let (r, _) = solve(&a, &cfg).map_err(|err| format!("case {case}: solve: {err}\n{a}"))?;
        if !r.converged {
            return Err(format!("case {case}: no convergence\n{a}"));
        }
        let diff = (&r.eigenvalue - &nu1).semi_norm(e(6)).map_err(|err| err.to_string())?;
        if diff > 1e-8 {
            return Err(format!(
                "case {case}: solve {} vs oracle {nu1} differ by {diff:e}\n{a}",
                r.eigenvalue
            ));
        }
    }
    Ok(cases)
}

fn separated_constants(g: &mut ChaCha8Rng, n: usize, complex: bool) -> Vec<Coeff> {
    loop {
        let cs: Vec<Coeff> = (0..n)
            .map(|_| {
                let im = if complex { g.gen_range(-2.0..2.0) } else { 0.0 };
                c64(g.gen_range(-3.0..3.0), im)
            })
            .collect();
        let ok = (0..n).all(|i| (0..i).all(|j| (cs[i] - cs[j]).norm() >= 0.5));
        if ok {
            return cs;
        }
    }
}

/// `S D S^-1` with distinct constant parts on `D`.
pub fn diagonalizable(g: &mut ChaCha8Rng, n: usize, bound: i64, complex: bool) -> (LcMatrix, Vec<LcNumber>) {
    let d: Vec<LcNumber> = separated_constants(g, n, complex)
        .into_iter()
        .map(|c| {
            let tail = series(g, 1, 3, bound, complex);
            &LcNumber::constant(c) + &tail
        })
        .collect();
    let (a, _) = similar_to_diagonal(g, d.clone());
    (a, d)
}

/// Criterion: constant parts of the eigenvalues are the eigenvalues of
/// the constant-part matrix.
pub fn pi_spectrum(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for case in 0..cases {
        let (a, eigenvalues) = if case % 2 == 0 {
            let a = dominant_2x2(&mut g, 6, 1.0);
            let (n1, n2) = eig2x2_symbolic(&a, e(6)).map_err(|err| err.to_string())?;
            (a, vec![n1, n2])
        } else {
            let complex = g.gen_bool(0.5);
            diagonalizable(&mut g, 3, 6, complex)
        };
        let expected: Vec<Coeff> = eigenvalues.iter().map(|x| x.coeff(e(0))).collect();
        let roots = charpoly_roots_complex(&a.pi_matrix().map_err(|err| err.to_string())?)
            .map_err(|err| err.to_string())?;
        let d = multiset_distance(&expected, &roots);
        if d > 1e-8 {
            return Err(format!("case {case}: {expected:?} vs {roots:?} ({d:e})\n{a}"));
        }
    }
    Ok(cases)
}

fn random_diagonal(g: &mut ChaCha8Rng, n: usize) -> Vec<LcNumber> {
    (0..n)
        .map(|_| {
            let complex = g.gen_bool(0.3);
            series(g, -2, 2, 5, complex)
        })
        .collect()
}

fn check_containment(a: &LcMatrix, eigenvalues: &[LcNumber], case: usize) -> Result<(), String> {
    let disks = a.gershgorin_disks().map_err(|err| err.to_string())?;
    for nu in eigenvalues {
        let mut inside = false;
        for d in &disks {
            if d.contains(nu).map_err(|err| format!("case {case}: {err}"))? {
                inside = true;
                break;
            }
        }
        if !inside {
            return Err(format!("case {case}: eigenvalue {nu} outside every disk of\n{a}"));
        }
    }
    let entries_finite = (0..a.dim()).all(|i| a.row(i).iter().all(LcNumber::is_at_most_finite));
    if all_eigenvalues_at_most_finite(&disks) != entries_finite {
        return Err(format!("case {case}: verdict disagrees with entry valuations\n{a}"));
    }
    Ok(())
}

/// Criterion: every eigenvalue lies in some disk; the verdict matches a
/// direct look at the entry valuations.
pub fn gershgorin(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for case in 0..cases {
        match case % 3 {
            0 => {
                let n = g.gen_range(1..=4);
                let d = random_diagonal(&mut g, n);
                check_containment(&LcMatrix::diagonal(d.clone()), &d, case)?;
            }
            1 => {
                let a = dominant_2x2(&mut g, 6, 1.0);
                let (n1, n2) = eig2x2_symbolic(&a, e(6)).map_err(|err| err.to_string())?;
                check_containment(&a, &[n1, n2], case)?;
            }
            _ => {
                // verdict only: a 2x2 with an infinitely large entry somewhere
                let mut entries: Vec<LcNumber> = (0..4).map(|_| at_most_finite(&mut g, 4, false)).collect();
                let k = g.gen_range(0..4);
                entries[k] = series(&mut g, -2, -1, 4, false);
                let a = LcMatrix::from_fn(2, |i, j| entries[2 * i + j].clone());
                check_containment(&a, &[], case)?;
            }
        }
    }
    Ok(cases)
}

/// Criterion: the Rayleigh quotient of an exact eigenvector is its
/// eigenvalue through the window.
pub fn rayleigh_fixed_point(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    let bound = 6;
    let mut pairs = 0;
    for case in 0..cases {
        let n = g.gen_range(2..=4);
        let d: Vec<LcNumber> = (0..n)
            .map(|_| {
                let complex = g.gen_bool(0.5);
                at_most_finite(&mut g, bound, complex)
            })
            .collect();
        let (a, s) = similar_to_diagonal(&mut g, d.clone());
        for (i, nu) in d.iter().enumerate() {
            let v = LcVector::new((0..n).map(|k| LcNumber::real(s[k][i] as f64)).collect()).unwrap();
            let rq = a.rayleigh_quotient(&v).map_err(|err| format!("case {case}: {err}"))?;
            let diff = (&rq - nu).semi_norm(e(bound)).map_err(|err| err.to_string())?;
            if diff > 1e-10 {
                return Err(format!("case {case}: quotient {rq} vs {nu} ({diff:e})"));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}
