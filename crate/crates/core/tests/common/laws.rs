//! Randomized arithmetic law checks. Each returns the number of cases run
//! or a description of the first failure.

use std::cmp::Ordering;

use lc_power::text::c64;
use lc_power::{Exponent, LcNumber, ValidityBound};
use rand::Rng;

use super::{at_most_finite, e, positive, q, rng, series};

type Check = Result<usize, String>;
pub type Law = fn(u64, usize) -> Check;

fn bound_of(xs: &[&LcNumber]) -> Exponent {
    xs.iter()
        .filter_map(|x| x.valid_to().finite())
        .min()
        .expect("finite inputs")
}

/// `lhs =_r rhs` at the common window, tolerance relative to `scale`.
fn agree(lhs: &LcNumber, rhs: &LcNumber, r: Exponent, scale: f64, what: &str) -> Result<(), String> {
    let r = r.min(bound_of(&[lhs, rhs]));
    let tol = 1e-10 * scale.max(1.0);
    if lhs.eq_up_to(rhs, r, tol).map_err(|e| format!("{what}: {e}"))? {
        Ok(())
    } else {
        Err(format!("{what} fails at r = {r}: {lhs} vs {rhs}"))
    }
}

pub fn ring_laws(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let complex = g.gen_bool(0.5);
        let a = at_most_finite(&mut g, bound, complex);
        let b = at_most_finite(&mut g, bound, complex);
        let c = at_most_finite(&mut g, bound, complex);
        let r = e(bound);
        let scale = a.max_abs() * b.max_abs() * c.max_abs();
        agree(&(&a + &b), &(&b + &a), r, scale, "add commutativity")?;
        agree(&(&a * &b), &(&b * &a), r, scale, "mul commutativity")?;
        agree(&(&(&a + &b) + &c), &(&a + &(&b + &c)), r, scale, "add associativity")?;
        agree(&(&(&a * &b) * &c), &(&a * &(&b * &c)), r, scale, "mul associativity")?;
        agree(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), r, scale, "distributivity")?;
    }
    Ok(cases)
}

pub fn lambda_additivity(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let complex = g.gen_bool(0.5);
        let a = series(&mut g, -2, 2, bound, complex);
        let b = series(&mut g, -2, 2, bound, complex);
        let (la, lb) = (a.lambda().unwrap(), b.lambda().unwrap());
        if (&a * &b).lambda() != Some(la + lb) {
            return Err(format!("lambda({a} * {b}) != {la} + {lb}"));
        }
    }
    Ok(cases)
}

pub fn inv_roundtrip(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let complex = g.gen_bool(0.5);
        let a = series(&mut g, -2, 2, bound, complex);
        let inv = a.inv().map_err(|err| format!("inv({a}): {err}"))?;
        let lambda = a.lambda().unwrap();
        let window = e(bound) - lambda - lambda;
        agree(&(&a * &inv), &LcNumber::one(), window, a.max_abs() * inv.max_abs(), "a * inv(a) = 1")?;
    }
    Ok(cases)
}

pub fn sqrt_roundtrip(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let a = positive(&mut g, -2, bound);
        let s = a.sqrt_real().map_err(|err| format!("sqrt({a}): {err}"))?;
        let window = e(bound) - a.lambda().unwrap().checked_div_int(2).unwrap();
        agree(&(&s * &s), &a, window, s.max_abs() * s.max_abs(), "sqrt(a)^2 = a")?;
    }
    Ok(cases)
}

pub fn conj_modulus(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let z = series(&mut g, -2, 2, bound, true);
        let m = z.abs_complex().map_err(|err| format!("|{z}|: {err}"))?;
        agree(&(&z.conj() * &z), &(&m * &m), e(bound), z.max_abs() * z.max_abs(), "conj(z) z = |z|^2")?;
    }
    Ok(cases)
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        f64::from_bits(1)
    } else {
        f64::from_bits(x.to_bits() + 1)
    }
}

pub fn triangle_inequality(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let complex = g.gen_bool(0.5);
        let a = series(&mut g, -2, 2, bound, complex);
        let b = series(&mut g, -2, 2, bound, complex);
        let r = q(g.gen_range(-6..=bound * 3), 3);
        let sum = (&a + &b).semi_norm(r).map_err(|err| err.to_string())?;
        let parts = a.semi_norm(r).unwrap() + b.semi_norm(r).unwrap();
        if sum > next_up(parts) {
            return Err(format!("|a + b|_{r} = {sum} > {parts} for a = {a}, b = {b}"));
        }
    }
    Ok(cases)
}

fn real_near(g: &mut rand_chacha::ChaCha8Rng, base: &LcNumber, bound: i64) -> LcNumber {
    match g.gen_range(0..3) {
        0 => base.clone(),
        1 => base + &series(g, 0, bound, bound, false),
        _ => series(g, -2, 2, bound, false),
    }
}

pub fn total_order(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let a = series(&mut g, -2, 2, bound, false);
        let b = real_near(&mut g, &a, bound);
        let c = real_near(&mut g, &b, bound);
        let cmp = |x: &LcNumber, y: &LcNumber| x.cmp_order(y).unwrap();
        if cmp(&a, &a) != Ordering::Equal {
            return Err(format!("{a} is not equal to itself"));
        }
        for (x, y) in [(&a, &b), (&b, &c), (&a, &c)] {
            if cmp(x, y) != cmp(y, x).reverse() {
                return Err(format!("antisymmetry fails for {x} and {y}"));
            }
        }
        let (ab, bc, ac) = (cmp(&a, &b), cmp(&b, &c), cmp(&a, &c));
        if ab != Ordering::Greater && bc != Ordering::Greater {
            let expected = if ab == Ordering::Equal && bc == Ordering::Equal {
                Ordering::Equal
            } else {
                Ordering::Less
            };
            if ac != expected {
                return Err(format!("transitivity fails for {a} <= {b} <= {c}"));
            }
        }
    }
    Ok(cases)
}

pub fn scale_exponents_is_monomial_product(seed: u64, cases: usize) -> Check {
    let mut g = rng(seed);
    for _ in 0..cases {
        let bound = g.gen_range(2..=5);
        let complex = g.gen_bool(0.5);
        let a = series(&mut g, -2, 2, bound, complex);
        let shift = q(g.gen_range(-9..=9), g.gen_range(1..=3));
        let lhs = a.scale_exponents(shift);
        let rhs = &a * &LcNumber::monomial(c64(1.0, 0.0), shift);
        if lhs != rhs {
            return Err(format!("{a} shifted by {shift}: {lhs:?} vs {rhs:?}"));
        }
        if lhs.valid_to() != ValidityBound::Finite(e(bound) + shift) {
            return Err(format!("shifted window {} != {}", lhs.valid_to(), e(bound) + shift));
        }
    }
    Ok(cases)
}

/// Every law with its name.
pub fn all() -> Vec<(&'static str, Law)> {
    vec![
        ("ring laws", ring_laws),
        ("lambda additivity", lambda_additivity),
        ("inv round trip", inv_roundtrip),
        ("sqrt round trip", sqrt_roundtrip),
        ("conj(z) z = |z|^2", conj_modulus),
        ("semi-norm triangle inequality", triangle_inequality),
        ("cmp_order total order", total_order),
        ("scale_exponents = mul by d^q", scale_exponents_is_monomial_product),
    ]
}
