//! Greatest common divisors in `λ` over the field of rational functions in
//! the outer variable.
//!
//! The Euclidean algorithm runs on the λ-major representation (coefficients
//! in `ℚ[t]`) as a primitive pseudo-remainder sequence, which is the
//! fraction-free form of Euclid over `ℚ(t)`.

use super::{BiPoly, UniPoly};
use crate::error::{Error, Result};

/// Monic gcd of the coefficients (in the outer variable) of every `λ` power.
pub fn lambda_content(p: &BiPoly) -> UniPoly {
    content_of(&p.to_lambda_major())
}

fn content_of(cols: &[UniPoly]) -> UniPoly {
    cols.iter()
        .fold(UniPoly::zero(), |g, c| if g == UniPoly::one() { g } else { g.gcd(c) })
}

fn primitive(cols: Vec<UniPoly>) -> Vec<UniPoly> {
    let c = content_of(&cols);
    if c.is_zero() || c == UniPoly::one() {
        return cols;
    }
    cols.iter().map(|x| x.exact_div(&c).expect("content divides")).collect()
}

fn trim(cols: &mut Vec<UniPoly>) {
    while cols.last().is_some_and(UniPoly::is_zero) {
        cols.pop();
    }
}

/// `lc(b)^k · a mod b` in `ℚ[t][λ]`, computed by repeated leading-term
/// elimination.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().cloned().expect("nonempty");
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bi);
        }
        trim(&mut r);
    }
    r
}

/// Gcd of two polynomials viewed in `ℚ(outer)[λ]`, returned with its content
/// removed and normalized: monic in `λ` when the top coefficient is a
/// constant, otherwise with a monic top coefficient. Coprime inputs give `1`.
pub fn gcd_in_lambda(p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    if p.var() != q.var() {
        return Err(Error::TagMismatch(p.var().name(), q.var().name()));
    }
    let var = p.var();
    if p.is_zero() && q.is_zero() {
        return Err(Error::Precondition("gcd of two zero polynomials".into()));
    }
    let mut a = primitive(p.to_lambda_major());
    let mut b = primitive(q.to_lambda_major());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // nonzero constant in λ: coprime over ℚ(t)
            return Ok(BiPoly::one(var));
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(r);
    }
    let g = normalize(a);
    if g.len() <= 1 {
        return Ok(BiPoly::one(var));
    }
    Ok(BiPoly::from_lambda_major(&g, var))
}

fn normalize(cols: Vec<UniPoly>) -> Vec<UniPoly> {
    let Some(top) = cols.last() else {
        return cols;
    };
    let lead = top.lead().expect("trimmed").recip();
    cols.iter().map(|c| c.scale(&lead)).collect()
}
