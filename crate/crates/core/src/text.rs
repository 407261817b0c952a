//! Text interchange format.
//!
//! A series is a sum of `c*t^(p/q)` terms, e.g. `100 + 1*t^1 + 2*t^2` or
//! `1.5*t^(1/2) - 2i*t^3`. Whitespace is ignored. Exponents are decimal
//! integers, optionally negative, or parenthesised fractions. Coefficients
//! are decimal reals, imaginaries with an `i` suffix, or a parenthesised
//! complex literal such as `(1.5-2i)`.
//!
//! A matrix is one row per line with entries separated by `;`. A
//! polynomial is a single line `poly: a0; a1; ...; a_{n-1}` listing the
//! coefficients below the implicit monic leading term, or
//! `coeffs: a0; ...; a_n` giving every coefficient, in which case `a_n`
//! must be exactly 1.

use num_complex::Complex64;

use crate::error::{LcError, Result};
use crate::exponent::{Exponent, ValidityBound};
use crate::linalg::{LcMatrix, LcVector, Polynomial};
use crate::number::{Coeff, LcNumber};

fn format_real(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:?}")
    }
}

fn format_exponent(q: Exponent) -> String {
    if q.is_integer() {
        format!("{}", q.numerator())
    } else {
        format!("({}/{})", q.numerator(), q.denominator())
    }
}

/// Formats a coefficient as a magnitude-with-sign pair so terms join with
/// ` + ` / ` - `.
fn format_coeff(c: Coeff) -> (bool, String) {
    if c.im == 0.0 {
        (c.re < 0.0, format_real(c.re.abs()))
    } else if c.re == 0.0 {
        (c.im < 0.0, format!("{}i", format_real(c.im.abs())))
    } else {
        let sign = if c.im < 0.0 { '-' } else { '+' };
        (
            false,
            format!("({}{}{}i)", format_real(c.re), sign, format_real(c.im.abs())),
        )
    }
}

/// Canonical text of a number. Coefficients round-trip exactly.
pub fn format_series(a: &LcNumber) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (q, c)) in a.terms().iter().enumerate() {
        let (negative, body) = format_coeff(*c);
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
        if !q.is_zero() {
            out.push_str("*t^");
            out.push_str(&format_exponent(*q));
        }
    }
    out
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col_offset: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, col_offset: usize) -> Self {
        Cursor {
            chars: src
                .chars()
                .enumerate()
                .filter(|(_, ch)| !ch.is_whitespace())
                .collect(),
            pos: 0,
            line,
            col_offset,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn column(&self) -> usize {
        let idx = self
            .chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or_else(|| self.chars.last().map_or(0, |(i, _)| i + 1));
        self.col_offset + idx + 1
    }

    fn error(&self, message: impl Into<String>) -> LcError {
        LcError::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{ch}'")))
        }
    }

    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '.' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if s.is_empty() || s == "." {
            self.pos = start;
            return None;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            let mut exp = String::from("e");
            self.pos += 1;
            if let Some(sign @ ('+' | '-')) = self.peek() {
                exp.push(sign);
                self.pos += 1;
            }
            let mut digits = false;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                exp.push(c);
                digits = true;
                self.pos += 1;
            }
            if digits {
                s.push_str(&exp);
            } else {
                self.pos = save;
            }
        }
        s.parse().ok()
    }

    fn integer(&mut self) -> Result<i64> {
        let negative = self.eat('-');
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        let v: i64 = digits.parse().map_err(|_| LcError::ExponentOverflow)?;
        Ok(if negative { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exponent> {
        if self.eat('(') {
            let num = self.integer()?;
            let den = if self.eat('/') { self.integer()? } else { 1 };
            self.expect(')')?;
            if den <= 0 {
                return Err(self.error("exponent denominator must be positive"));
            }
            Exponent::new(num, den)
        } else {
            Ok(Exponent::integer(self.integer()?))
        }
    }

    /// real or imaginary literal: `2`, `2.5i`, `i`
    fn imaginary_or_real(&mut self) -> Option<Coeff> {
        match self.number() {
            Some(x) => Some(if self.eat('i') {
                Coeff::new(0.0, x)
            } else {
                Coeff::new(x, 0.0)
            }),
            None if self.eat('i') => Some(Coeff::new(0.0, 1.0)),
            None => None,
        }
    }

    fn complex_literal(&mut self) -> Result<Coeff> {
        let mut total = Coeff::new(0.0, 0.0);
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1.0
            } else if self.eat('+') || first {
                1.0
            } else {
                break;
            };
            let part = self
                .imaginary_or_real()
                .ok_or_else(|| self.error("expected a number"))?;
            total += part * sign;
            first = false;
        }
        self.expect(')')?;
        Ok(total)
    }

    fn term(&mut self, sign: f64) -> Result<(Exponent, Coeff)> {
        let coeff = if self.eat('(') {
            Some(self.complex_literal()?)
        } else {
            self.imaginary_or_real()
        };
        if coeff.is_some() {
            self.eat('*');
        }
        let exponent = if self.eat('t') {
            if self.eat('^') {
                self.exponent()?
            } else {
                Exponent::ONE
            }
        } else if coeff.is_none() {
            return Err(self.error("expected a coefficient or 't'"));
        } else {
            Exponent::ZERO
        };
        Ok((exponent, coeff.unwrap_or(Coeff::new(1.0, 0.0)) * sign))
    }

    fn series(&mut self) -> Result<LcNumber> {
        let mut raw = Vec::new();
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            raw.push(self.term(sign)?);
            sign = if self.eat('+') {
                1.0
            } else if self.eat('-') {
                -1.0
            } else {
                break;
            };
        }
        if self.peek().is_some() {
            return Err(self.error(format!("unexpected '{}'", self.peek().unwrap())));
        }
        LcNumber::new(raw, ValidityBound::Infinite)
    }
}

fn parse_series_at(text: &str, line: usize, col_offset: usize) -> Result<LcNumber> {
    let mut cur = Cursor::new(text, line, col_offset);
    if cur.peek().is_none() {
        return Err(cur.error("empty series"));
    }
    cur.series()
}

/// Parses one series. The result is exact (infinite validity bound).
pub fn parse_series(text: &str) -> Result<LcNumber> {
    parse_series_at(text, 1, 0)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn parse_row(line: &str, lineno: usize, col_offset: usize) -> Result<Vec<LcNumber>> {
    let mut offset = col_offset;
    let mut out = Vec::new();
    for field in line.split(';') {
        out.push(parse_series_at(field, lineno, offset)?);
        offset += field.chars().count() + 1;
    }
    Ok(out)
}

pub fn parse_matrix(text: &str) -> Result<LcMatrix> {
    let mut rows = Vec::new();
    let mut first_line = 1;
    for (lineno, line) in content_lines(text) {
        if rows.is_empty() {
            first_line = lineno;
        }
        let row = parse_row(line, lineno, 0)?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(LcError::Parse {
            line: first_line,
            column: 1,
            message: "empty matrix".into(),
        });
    }
    for (i, (lineno, _)) in content_lines(text).enumerate() {
        if rows[i].len() != n {
            return Err(LcError::Parse {
                line: lineno,
                column: 1,
                message: format!("row has {} entries, matrix needs {n}", rows[i].len()),
            });
        }
    }
    Ok(LcMatrix::from_rows(rows).expect("validated square"))
}

/// One series per line.
pub fn parse_vector(text: &str) -> Result<LcVector> {
    let entries = content_lines(text)
        .map(|(lineno, line)| parse_series_at(line, lineno, 0))
        .collect::<Result<Vec<_>>>()?;
    LcVector::new(entries).ok_or(LcError::Parse {
        line: 1,
        column: 1,
        message: "empty vector".into(),
    })
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let mut lines = content_lines(text);
    let (lineno, line) = lines.next().ok_or(LcError::Parse {
        line: 1,
        column: 1,
        message: "empty polynomial file".into(),
    })?;
    if let Some((extra, _)) = lines.next() {
        return Err(LcError::Parse {
            line: extra,
            column: 1,
            message: "polynomial must fit on one line".into(),
        });
    }
    let (head, body) = line.split_once(':').ok_or(LcError::Parse {
        line: lineno,
        column: 1,
        message: "expected 'poly:' or 'coeffs:'".into(),
    })?;
    let offset = head.chars().count() + 1;
    let mut coeffs = parse_row(body, lineno, offset)?;
    match head.trim() {
        "poly" => {}
        "coeffs" => {
            let lead = coeffs.pop().expect("split yields at least one field");
            if lead != LcNumber::one() {
                return Err(LcError::Parse {
                    line: lineno,
                    column: offset + 1,
                    message: format!("non-monic polynomial: leading coefficient {lead}"),
                });
            }
            if coeffs.is_empty() {
                return Err(LcError::Parse {
                    line: lineno,
                    column: offset + 1,
                    message: "polynomial of degree 0".into(),
                });
            }
        }
        other => {
            return Err(LcError::Parse {
                line: lineno,
                column: 1,
                message: format!("unknown polynomial header '{other}'"),
            })
        }
    }
    Polynomial::monic(coeffs)
}

pub fn format_matrix(a: &LcMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.dim() {
        let row: Vec<String> = a.row(i).iter().map(format_series).collect();
        out.push_str(&row.join("; "));
        out.push('\n');
    }
    out
}

pub fn format_polynomial(p: &Polynomial) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(format_series).collect();
    format!("poly: {}\n", parts.join("; "))
}

/// Shorthand used across tests and bindings.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
