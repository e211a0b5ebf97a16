//! Resultants and discriminants with respect to `λ`.
//!
//! The Sylvester matrix has entries in `ℚ[outer]`. Its determinant is
//! evaluated at enough integer points (Bareiss elimination over `ℚ`) and
//! recovered by exact interpolation; [`sylvester_det`] does the same job
//! directly over `ℚ[outer]` and serves as a cross-check.

use num_traits::{One, Zero};

use super::{BiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// Determinant of a square matrix over `ℚ[x]` by Bareiss elimination.
pub fn sylvester_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign_negative = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            m.swap(k, swap);
            sign_negative = !sign_negative;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        -det
    } else {
        det
    }
}

/// `Res_λ(p, q)` as a polynomial in the outer variable.
pub fn resultant_in_lambda(p: &BiPoly, q: &BiPoly) -> Result<UniPoly> {
    if p.var() != q.var() {
        return Err(Error::TagMismatch(p.var().name(), q.var().name()));
    }
    let a = p.to_lambda_major();
    let b = q.to_lambda_major();
    if a.is_empty() || b.is_empty() {
        return Ok(UniPoly::zero());
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    if size == 0 {
        return Ok(UniPoly::one());
    }
    let mut m = vec![vec![UniPoly::zero(); size]; size];
    // rows 0..db hold shifted copies of p, rows db..size of q; highest power first
    for r in 0..db {
        for (j, c) in a.iter().enumerate() {
            m[r][r + da - j] = c.clone();
        }
    }
    for r in 0..da {
        for (j, c) in b.iter().enumerate() {
            m[db + r][r + db - j] = c.clone();
        }
    }
    // entry (r, c) has degree ≤ deg_outer of the row's source polynomial
    let bound = db * p.deg_outer().unwrap_or(0) + da * q.deg_outer().unwrap_or(0);
    let xs: Vec<Rational> = (0..=bound as i64).map(|k| Rational::from_integer(k.into())).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| rational_det(m.iter().map(|row| row.iter().map(|e| e.eval(x)).collect()).collect()))
        .collect();
    Ok(UniPoly::interpolate(&xs, &ys))
}

/// Determinant over `ℚ` by Bareiss elimination.
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut negate = false;
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Rational::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                for j in k + 1..n {
                    m[i][j] = &(&m[i][j] * &m[k][k]) / &prev;
                }
                continue;
            }
            for j in k + 1..n {
                m[i][j] = &(&(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j])) / &prev;
            }
            m[i][k] = Rational::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Discriminant of `p` in `λ`: `(−1)^{n(n−1)/2} Res_λ(p, ∂p/∂λ) / lc(p)`,
/// with `n = deg_λ p` and `lc(p)` a nonzero rational constant.
pub fn discriminant_in_lambda(p: &BiPoly) -> Result<UniPoly> {
    let n = p.deg_lambda().unwrap_or(0);
    if n < 2 {
        return Err(Error::Precondition(format!(
            "discriminant needs λ-degree ≥ 2, got {n}"
        )));
    }
    let lead = p.lambda_lead();
    if !lead.is_constant() {
        return Err(Error::Precondition(
            "discriminant needs a constant leading λ-coefficient".into(),
        ));
    }
    let res = resultant_in_lambda(p, &p.derivative_lambda())?;
    let mut scale: Rational = lead.coeff(0).recip();
    if (n * (n - 1) / 2) % 2 == 1 {
        scale = -scale;
    }
    if scale.is_one() {
        Ok(res)
    } else {
        Ok(res.scale(&scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, Var};

    #[test]
    fn quadratic_discriminants() {
        // λ(λ+1) − w²  →  1 + 4w²
        let p = BiPoly::from_int_rows(&[&[0, 1, 1], &[], &[-1]], Var::W);
        assert_eq!(discriminant_in_lambda(&p).unwrap(), UniPoly::from_ints(&[1, 0, 4]));
        // λ² − w²  →  4w²
        let q = BiPoly::from_int_rows(&[&[0, 0, 1], &[], &[-1]], Var::W);
        assert_eq!(discriminant_in_lambda(&q).unwrap(), UniPoly::from_ints(&[0, 0, 4]));
        // λ²  →  0
        let r = BiPoly::from_int_rows(&[&[0, 0, 1]], Var::W);
        assert!(discriminant_in_lambda(&r).unwrap().is_zero());
    }

    #[test]
    fn cubic_matches_closed_form() {
        // λ³ + cλ + d with c = −t, d = 2: disc = −4c³ − 27d² = 4t³ − 108
        let p = BiPoly::from_int_rows(&[&[2, 0, 0, 1], &[0, -1]], Var::T);
        assert_eq!(discriminant_in_lambda(&p).unwrap(), UniPoly::from_ints(&[-108, 0, 0, 4]));
    }

    #[test]
    fn resultant_vanishes_on_common_factor() {
        let f = BiPoly::from_int_rows(&[&[1, 1], &[1]], Var::T);
        let g = f.mul(&BiPoly::lambda_plus(rat(2), Var::T)).unwrap();
        let h = f.mul(&BiPoly::lambda_plus(rat(3), Var::T)).unwrap();
        assert!(resultant_in_lambda(&g, &h).unwrap().is_zero());
    }

    #[test]
    fn interpolated_resultant_matches_polynomial_bareiss() {
        let p = crate::pencil::JacobiPencil::from_ints(&[3, -1, 4, 1, -5], &[9, -2, 6, 5]).unwrap().continuant();
        let dp = p.derivative_lambda();
        let (a, b) = (p.to_lambda_major(), dp.to_lambda_major());
        let (da, db) = (a.len() - 1, b.len() - 1);
        let mut m = vec![vec![UniPoly::zero(); da + db]; da + db];
        for r in 0..db {
            for (j, c) in a.iter().enumerate() {
                m[r][r + da - j] = c.clone();
            }
        }
        for r in 0..da {
            for (j, c) in b.iter().enumerate() {
                m[db + r][r + db - j] = c.clone();
            }
        }
        assert_eq!(resultant_in_lambda(&p, &dp).unwrap(), sylvester_det(m));
    }

    #[test]
    fn linear_is_rejected() {
        let p = BiPoly::lambda_plus(rat(1), Var::W);
        assert!(discriminant_in_lambda(&p).is_err());
    }
}
