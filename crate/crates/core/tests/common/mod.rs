//! Random instance generators shared by the integration suites.
#![allow(dead_code)]

use lc_power::text::c64;
use lc_power::{Coeff, Exponent, LcMatrix, LcNumber, ValidityBound};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn e(n: i64) -> Exponent {
    Exponent::integer(n)
}

pub fn q(num: i64, den: i64) -> Exponent {
    Exponent::new(num, den).unwrap()
}

fn exponent_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Exponent {
    let den = rng.gen_range(1..=3);
    q(rng.gen_range(lo * den..=hi * den), den)
}

fn coeff(rng: &mut ChaCha8Rng, lo: f64, hi: f64, complex: bool) -> Coeff {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let re = sign * rng.gen_range(lo..hi);
    let im = if complex { rng.gen_range(-hi..hi) } else { 0.0 };
    c64(re, im)
}

/// A nonzero series with leading exponent in `[lo, hi]`, further terms up
/// to `bound`, valid to `bound`.
pub fn series(rng: &mut ChaCha8Rng, lo: i64, hi: i64, bound: i64, complex: bool) -> LcNumber {
    let lead = exponent_in(rng, lo, hi.min(bound));
    let mut raw = vec![(lead, coeff(rng, 1.0, 3.0, complex))];
    for _ in 0..rng.gen_range(0..4) {
        let ex = exponent_in(rng, lo, bound);
        if ex > lead {
            raw.push((ex, coeff(rng, 0.0, 1.0, complex)));
        }
    }
    LcNumber::new(raw, ValidityBound::Finite(e(bound))).unwrap()
}

pub fn at_most_finite(rng: &mut ChaCha8Rng, bound: i64, complex: bool) -> LcNumber {
    series(rng, 0, 2, bound, complex)
}

/// Real, with a positive leading coefficient.
pub fn positive(rng: &mut ChaCha8Rng, lo: i64, bound: i64) -> LcNumber {
    let a = series(rng, lo, 2, bound, false);
    match a.leading() {
        Some((_, c)) if c.re < 0.0 => -a,
        _ => a,
    }
}

/// Integer constant matrix as series.
pub fn integer_matrix(m: &[Vec<i64>]) -> LcMatrix {
    LcMatrix::from_fn(m.len(), |i, j| LcNumber::real(m[i][j] as f64))
}

fn unit_triangular(rng: &mut ChaCha8Rng, n: usize, lower: bool) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, (j < i) == lower) {
                    (true, _) => 1,
                    (false, true) => rng.gen_range(-2..=2),
                    (false, false) => 0,
                })
                .collect()
        })
        .collect()
}

pub fn mul_int(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Inverse of a unit lower triangular integer matrix, exactly.
fn invert_unit_lower(l: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = l.len();
    let mut inv = vec![vec![0i64; n]; n];
    for col in 0..n {
        for i in 0..n {
            let s: i64 = (0..i).map(|k| l[i][k] * inv[k][col]).sum();
            inv[i][col] = (i == col) as i64 - s;
        }
    }
    inv
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// A unimodular integer matrix `S = L U` and its exact inverse.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let l = unit_triangular(rng, n, true);
    let u = unit_triangular(rng, n, false);
    let l_inv = invert_unit_lower(&l);
    let u_inv = transpose(&invert_unit_lower(&transpose(&u)));
    (mul_int(&l, &u), mul_int(&u_inv, &l_inv))
}

/// `S diag(d) S^-1` with `S` unimodular; returns the matrix and `S`.
pub fn similar_to_diagonal(rng: &mut ChaCha8Rng, d: Vec<LcNumber>) -> (LcMatrix, Vec<Vec<i64>>) {
    let n = d.len();
    let (s, s_inv) = unimodular(rng, n);
    let a = integer_matrix(&s)
        .matmul(&LcMatrix::diagonal(d))
        .unwrap()
        .matmul(&integer_matrix(&s_inv))
        .unwrap();
    (a, s)
}

/// Greedy nearest matching of two equally long complex multisets; returns
/// the largest matched distance.
pub fn multiset_distance(a: &[Coeff], b: &[Coeff]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut pool: Vec<Coeff> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (idx, d) = pool
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|u, v| u.1.total_cmp(&v.1))
            .unwrap();
        worst = worst.max(d);
        pool.swap_remove(idx);
    }
    worst
}

pub mod laws;
pub mod suites;
