//! Factorization of univariate rational polynomials of small degree.
//!
//! Candidate factors are proposed from floating-point roots (products over
//! root subsets, rounded to integers) and accepted only after exact division
//! succeeds, so every reported factor is exact. A candidate search that
//! cannot be trusted numerically is reported as incomplete rather than
//! guessed.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, UniPoly};
use crate::numeric::poly_roots;

/// Largest squarefree degree searched exhaustively.
const MAX_SEARCH_DEGREE: usize = 16;
/// Integer coefficients above this cannot be rounded reliably from `f64`.
const MAX_TRUSTED_COEFF: f64 = 1e12;

/// Monic irreducible factors over `ℚ` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactorization {
    pub factors: Vec<(UniPoly, usize)>,
    /// False when some squarefree part could not be searched exhaustively; the
    /// corresponding entry is then a product of irreducibles, still exact.
    pub complete: bool,
}

impl RationalFactorization {
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree().unwrap_or(0), *m))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Factor a nonzero polynomial into monic irreducibles over `ℚ`.
pub fn factor_over_rationals(p: &UniPoly) -> RationalFactorization {
    let mut factors = Vec::new();
    let mut complete = true;
    for (sqf, mult) in p.squarefree_decomposition() {
        let (parts, ok) = factor_squarefree(&sqf);
        complete &= ok;
        factors.extend(parts.into_iter().map(|f| (f, mult)));
    }
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    RationalFactorization { factors, complete }
}

fn factor_squarefree(f: &UniPoly) -> (Vec<UniPoly>, bool) {
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return (vec![f.monic()], true);
    }
    // g(x) = D^d f(x / D) is monic with integer coefficients
    let f = f.monic();
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g = rescale(&f, &Rational::from_integer(den.clone()));
    debug_assert!(g.is_integral());
    if d > MAX_SEARCH_DEGREE || g.max_abs_f64() > MAX_TRUSTED_COEFF {
        return (vec![f], false);
    }
    let coeffs: Vec<Complex64> = g.to_f64().into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    let mut roots = poly_roots(&coeffs);
    let mut rest = g;
    let mut found = Vec::new();
    'outer: loop {
        let remaining = rest.degree().unwrap_or(0);
        if remaining <= 1 {
            break;
        }
        for size in 1..=remaining / 2 {
            for subset in subsets(roots.len(), size) {
                let Some(cand) = integer_candidate(&roots, &subset) else {
                    continue;
                };
                if let Ok(q) = rest.exact_div(&cand) {
                    found.push(cand);
                    rest = q;
                    let keep: Vec<Complex64> = roots
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !subset.contains(i))
                        .map(|(_, z)| *z)
                        .collect();
                    roots = keep;
                    continue 'outer;
                }
            }
        }
        break;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        found.push(rest);
    }
    let inv = Rational::from_integer(den).recip();
    (found.iter().map(|h| rescale(h, &inv).monic()).collect(), true)
}

/// `s^deg · h(x / s)`, which maps monic to monic.
fn rescale(h: &UniPoly, s: &Rational) -> UniPoly {
    let d = h.degree().unwrap_or(0);
    let mut pow = Rational::one();
    let mut coeffs = vec![Rational::zero(); d + 1];
    for k in (0..=d).rev() {
        coeffs[k] = h.coeff(k) * &pow;
        pow *= s;
    }
    UniPoly::new(coeffs)
}

fn integer_candidate(roots: &[Complex64], subset: &[usize]) -> Option<UniPoly> {
    let mut prod = vec![Complex64::new(1.0, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * roots[i];
        }
        prod = next;
    }
    let mut coeffs = Vec::with_capacity(prod.len());
    for c in prod {
        let r = c.re.round();
        let tol = 1e-6 * (1.0 + c.re.abs());
        if (c.re - r).abs() > tol || c.im.abs() > tol || r.abs() > MAX_TRUSTED_COEFF {
            return None;
        }
        coeffs.push(Rational::from_integer(BigInt::from(r as i64)));
    }
    let cand = UniPoly::new(coeffs);
    (!cand.lead()?.is_negative()).then_some(cand)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::ratio;

    #[test]
    fn splits_into_known_factors() {
        // (x^2 - 2)(x + 3)(x - 1/2)^2
        let a = UniPoly::from_ints(&[-2, 0, 1]);
        let b = UniPoly::from_ints(&[3, 1]);
        let c = UniPoly::new(vec![ratio(-1, 2), ratio(1, 1)]);
        let p = &(&a * &b) * &c.pow(2);
        let f = factor_over_rationals(&p);
        assert!(f.complete);
        assert_eq!(f.degree_pattern(), vec![1, 1, 1, 2]);
        let prod = f
            .factors
            .iter()
            .fold(UniPoly::one(), |acc, (g, m)| &acc * &g.pow(*m as u32));
        assert_eq!(prod, p.monic());
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // μ⁴ − 14μ² + 9 only splits over ℚ(√10)
        let q = UniPoly::from_ints(&[9, 0, -14, 0, 1]);
        let f = factor_over_rationals(&q);
        assert!(f.complete);
        assert_eq!(f.factors, vec![(q, 1)]);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }
}
