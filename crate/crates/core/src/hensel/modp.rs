//! The same lift carried out modulo a 61-bit prime, used to discard subsets
//! quickly. When the inputs reduce (denominators and diagonal differences
//! invertible), reduction mod `p` is a ring map commuting with every lifting
//! step, so a nonzero `t^{D+1}` coefficient mod `p` proves the rational one is
//! nonzero. The converse is never assumed: survivors go to the exact lift.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exactpoly::{BiPoly, Rational};

const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

/// Image of `r` in `𝔽_p`, or `None` when the denominator vanishes mod `p`.
pub fn reduce(r: &Rational) -> Option<u64> {
    let den = reduce_int(r.denom());
    (den != 0).then(|| mul(reduce_int(r.numer()), inv(den)))
}

type Poly = Vec<u64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[u64], b: &[u64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add(out[i + j], mul(x, y));
        }
    }
    trim(out)
}

fn poly_sub(a: &[u64], b: &[u64]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
    }
    trim(out)
}

fn poly_add_assign(a: &mut Poly, b: &[u64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i] = add(a[i], y);
    }
    *a = trim(std::mem::take(a));
}

/// Quotient and remainder by a monic divisor.
fn div_rem_monic(a: &[u64], f: &[u64]) -> (Poly, Poly) {
    let df = f.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= df {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0; r.len() - df];
    for k in (0..q.len()).rev() {
        let c = r[k + df];
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &fj) in f.iter().enumerate() {
            r[k + j] = sub(r[k + j], mul(c, fj));
        }
    }
    r.truncate(df);
    (trim(q), trim(r))
}

fn linear_product(roots: &[u64]) -> Poly {
    roots.iter().fold(vec![1], |acc, &r| poly_mul(&acc, &[r, 1]))
}

fn eval(p: &[u64], x: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| add(mul(acc, x), c))
}

/// `P(λ, t)` and its diagonal values reduced mod `p`.
pub struct Reduced {
    layers: Vec<Poly>,
    values: Vec<u64>,
}

impl Reduced {
    /// `None` when some coefficient fails to reduce or two diagonal values
    /// collide mod `p`; the caller then skips the filter.
    pub fn new(p: &BiPoly, values: &[Rational]) -> Option<Self> {
        let mut layers = Vec::new();
        for layer in p.layers() {
            let mut out = Vec::with_capacity(layer.coeffs().len());
            for c in layer.coeffs() {
                out.push(if c.is_zero() { 0 } else { reduce(c)? });
            }
            layers.push(trim(out));
        }
        let values: Vec<u64> = values.iter().map(reduce).collect::<Option<_>>()?;
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self { layers, values })
    }

    /// True when the lift for the positions `inside` provably fails to
    /// terminate at order `D + 1`.
    pub fn obstructs(&self, inside: &[usize]) -> bool {
        let (ins, outs): (Vec<u64>, Vec<u64>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &v) in self.values.iter().enumerate() {
                if inside.contains(&i) {
                    a.push(v)
                } else {
                    b.push(v)
                }
            }
            (a, b)
        };
        let f0 = linear_product(&ins);
        let g0 = linear_product(&outs);
        // V ≡ G_0^{-1} mod F_0 by interpolation at the roots −a_i of F_0
        let mut v: Poly = Vec::new();
        for (i, &ai) in ins.iter().enumerate() {
            let x = sub(0, ai);
            let others: Vec<u64> = ins.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &a)| a).collect();
            let basis = linear_product(&others);
            let scale = inv(mul(eval(&basis, x), eval(&g0, x)));
            poly_add_assign(&mut v, &poly_mul(&basis, &[scale]));
        }
        let d = self.layers.len().saturating_sub(1);
        let mut f = vec![f0.clone()];
        let mut g = vec![g0.clone()];
        let coeff = |f: &[Poly], g: &[Poly], k: usize| {
            let mut acc: Poly = Vec::new();
            for (i, fi) in f.iter().enumerate().take(k + 1) {
                if let Some(gj) = g.get(k - i) {
                    poly_add_assign(&mut acc, &poly_mul(fi, gj));
                }
            }
            acc
        };
        for k in 1..=d {
            let e = poly_sub(self.layers.get(k).map_or(&[][..], |l| l), &coeff(&f, &g, k));
            let (_, fk) = div_rem_monic(&poly_mul(&v, &e), &f0);
            let (gk, rem) = div_rem_monic(&poly_sub(&e, &poly_mul(&g0, &fk)), &f0);
            debug_assert!(rem.is_empty());
            f.push(fk);
            g.push(gk);
        }
        !coeff(&f, &g, d + 1).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::ratio;

    #[test]
    fn reduction_is_a_field_map() {
        let x = reduce(&ratio(3, 7)).unwrap();
        assert_eq!(mul(x, 7), 3);
        assert_eq!(reduce(&ratio(-1, 1)), Some(P - 1));
        assert_eq!(reduce(&Rational::new(BigInt::from(1), BigInt::from(P))), None);
    }

    #[test]
    fn division_by_monic() {
        // (x^2 + 3x + 2) = (x + 1)(x + 2)
        let (q, r) = div_rem_monic(&[2, 3, 1], &[1, 1]);
        assert_eq!(q, vec![2, 1]);
        assert!(r.is_empty());
    }
}
