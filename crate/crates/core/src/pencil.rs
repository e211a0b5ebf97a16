//! Finite Jacobi pencils `J(w) = A + wB` and their spectral curves.
//!
//! The spectral curve is `χ(λ, w) = det(λI + J(w))`. It depends on `w` only
//! through `t = w²`, and in `t` it is the continuant
//!
//! ```text
//! P_0 = 1,  P_1 = λ + a_1,  P_k = (λ + a_k) P_{k-1} − t b_{k-1}² P_{k-2}.
//! ```

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, BiPoly, Rational, UniPoly, Var};

/// Largest size accepted by [`JacobiPencil::charpoly_oracle`].
pub const ORACLE_MAX_N: usize = 10;

/// Diagonal entries `a_1..a_n` and couplings `b_1..b_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JacobiPencil {
    a: Vec<Rational>,
    b: Vec<Rational>,
    c: Vec<Rational>,
}

/// A contiguous index range `[r, s]` (1-based, inclusive) of a pencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Block {
    pub r: usize,
    pub s: usize,
}

impl Block {
    pub fn new(r: usize, s: usize) -> Self {
        Self { r, s }
    }

    /// Length `m = s − r + 1`.
    pub fn size(&self) -> usize {
        self.s + 1 - self.r
    }

    /// 1-based indices covered by the block.
    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.r..=self.s
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.r, self.s)
    }
}

impl JacobiPencil {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Validation("pencil needs n ≥ 1 diagonal entries".into()));
        }
        if b.len() + 1 != a.len() {
            return Err(Error::Validation(format!(
                "expected {} couplings for n = {}, got {}",
                a.len() - 1,
                a.len(),
                b.len()
            )));
        }
        let c = b.iter().map(|x| x * x).collect();
        Ok(Self { a, b, c })
    }

    pub fn from_ints(a: &[i64], b: &[i64]) -> Result<Self> {
        Self::new(
            a.iter().map(|&x| crate::exactpoly::rat(x)).collect(),
            b.iter().map(|&x| crate::exactpoly::rat(x)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// Squared couplings `c_i = b_i²`.
    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    /// All couplings nonzero.
    pub fn is_connected(&self) -> bool {
        self.b.iter().all(|x| !x.is_zero())
    }

    pub fn has_distinct_diagonal(&self) -> bool {
        pairwise_distinct(&self.a)
    }

    pub fn full_block(&self) -> Block {
        Block::new(1, self.n())
    }

    pub fn check_block(&self, blk: Block) -> Result<()> {
        if blk.r < 1 || blk.r > blk.s || blk.s > self.n() {
            return Err(Error::Validation(format!(
                "block {blk} out of range for n = {}",
                self.n()
            )));
        }
        Ok(())
    }

    /// Sub-pencil on `[r, s]`: diagonal `a_r..a_s`, couplings `b_r..b_{s-1}`.
    pub fn extract_block(&self, r: usize, s: usize) -> Result<Self> {
        self.check_block(Block::new(r, s))?;
        Self::new(self.a[r - 1..s].to_vec(), self.b[r - 1..s - 1].to_vec())
    }

    pub fn extract(&self, blk: Block) -> Result<Self> {
        self.extract_block(blk.r, blk.s)
    }

    /// `P_n(λ, t)` by the three-term recurrence.
    pub fn continuant(&self) -> BiPoly {
        let mut prev2 = BiPoly::one(Var::T);
        let mut prev1 = BiPoly::lambda_plus(self.a[0].clone(), Var::T);
        for k in 1..self.n() {
            let lin = UniPoly::linear(self.a[k].clone());
            let next = prev1
                .mul_lambda(&lin)
                .sub(&prev2.scale(&self.c[k - 1]).shift_outer(1))
                .expect("same tag");
            prev2 = std::mem::replace(&mut prev1, next);
        }
        prev1
    }

    /// `χ_n(λ, w)`, the continuant with `t = w²`.
    pub fn charpoly(&self) -> BiPoly {
        self.continuant().to_w_form().expect("continuant is in t-form")
    }

    /// The symbolic matrix `λI + J(w)` with entries in `ℚ[λ, w]`.
    pub fn symbolic_matrix(&self) -> Vec<Vec<BiPoly>> {
        let n = self.n();
        let mut m = vec![vec![BiPoly::zero(Var::W); n]; n];
        for i in 0..n {
            m[i][i] = BiPoly::lambda_plus(self.a[i].clone(), Var::W);
            if i + 1 < n && !self.b[i].is_zero() {
                let off = BiPoly::monomial(self.b[i].clone(), 0, 1, Var::W);
                m[i][i + 1] = off.clone();
                m[i + 1][i] = off;
            }
        }
        m
    }

    /// `det(λI + J(w))` by cofactor expansion of the symbolic matrix. Kept
    /// independent of [`continuant`](Self::continuant) so it can check it.
    pub fn charpoly_oracle(&self) -> Result<BiPoly> {
        if self.n() > ORACLE_MAX_N {
            return Err(Error::Precondition(format!(
                "oracle limited to n ≤ {ORACLE_MAX_N}, got {}",
                self.n()
            )));
        }
        Ok(symbolic_det(&self.symbolic_matrix()))
    }

    /// Maximal index ranges without a zero coupling.
    pub fn connected_components(&self) -> Vec<Block> {
        let mut out = Vec::new();
        let mut start = 1;
        for (i, b) in self.b.iter().enumerate() {
            if b.is_zero() {
                out.push(Block::new(start, i + 1));
                start = i + 2;
            }
        }
        out.push(Block::new(start, self.n()));
        out
    }
}

impl fmt::Display for JacobiPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<_> = self.a.iter().map(format_rational).collect();
        let b: Vec<_> = self.b.iter().map(format_rational).collect();
        write!(f, "a=({}), b=({})", a.join(","), b.join(","))
    }
}

impl fmt::Debug for JacobiPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JacobiPencil({self})")
    }
}

/// Determinant of a small square matrix of bivariate polynomials, by Laplace
/// expansion along rows with memoization on the set of unused columns.
pub fn symbolic_det(m: &[Vec<BiPoly>]) -> BiPoly {
    let n = m.len();
    let var = m.first().and_then(|r| r.first()).map_or(Var::W, BiPoly::var);
    assert!(n < usize::BITS as usize, "matrix too large for cofactor expansion");
    let mut memo: HashMap<usize, BiPoly> = HashMap::new();
    expand(m, 0, (1usize << n) - 1, var, &mut memo)
}

fn expand(
    m: &[Vec<BiPoly>],
    row: usize,
    cols: usize,
    var: Var,
    memo: &mut HashMap<usize, BiPoly>,
) -> BiPoly {
    if row == m.len() {
        return BiPoly::one(var);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = BiPoly::zero(var);
    let mut sign_negative = false;
    for j in 0..m.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &m[row][j];
        if !entry.is_zero() {
            let minor = expand(m, row + 1, cols & !(1 << j), var, memo);
            let term = entry.mul(&minor).expect("uniform tag");
            acc = if sign_negative {
                acc.sub(&term)
            } else {
                acc.add(&term)
            }
            .expect("uniform tag");
        }
        sign_negative = !sign_negative;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// `∏ (λ + a_i)`, the spectral curve at `t = 0`.
pub fn diagonal_product(a: &[Rational]) -> UniPoly {
    a.iter()
        .fold(UniPoly::one(), |acc, x| &acc * &UniPoly::linear(x.clone()))
}

/// True when every value in `a` differs from every other.
pub fn pairwise_distinct(a: &[Rational]) -> bool {
    let mut v = a.to_vec();
    v.sort();
    v.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn continuant_small_cases() {
        let p1 = JacobiPencil::from_ints(&[5], &[]).unwrap();
        assert_eq!(p1.continuant(), BiPoly::lambda_plus(rat(5), Var::T));

        // (λ+a1)(λ+a2) − t b1²  with a=(1,2), b=(3)
        let p2 = JacobiPencil::from_ints(&[1, 2], &[3]).unwrap();
        assert_eq!(p2.continuant(), BiPoly::from_int_rows(&[&[2, 3, 1], &[-9]], Var::T));

        // λ(λ+1)(λ+2) − t(2λ+2)
        let p3 = JacobiPencil::from_ints(&[0, 1, 2], &[1, 1]).unwrap();
        assert_eq!(
            p3.continuant(),
            BiPoly::from_int_rows(&[&[0, 2, 3, 1], &[-2, -2]], Var::T)
        );
    }

    #[test]
    fn oracle_small_cases() {
        let p = JacobiPencil::from_ints(&[1, 2], &[3]).unwrap();
        assert_eq!(
            p.charpoly_oracle().unwrap(),
            BiPoly::from_int_rows(&[&[2, 3, 1], &[], &[-9]], Var::W)
        );
        let q = JacobiPencil::from_ints(&[7], &[]).unwrap();
        assert_eq!(q.charpoly_oracle().unwrap(), BiPoly::lambda_plus(rat(7), Var::W));
        let s = JacobiPencil::from_ints(&[0, 0, 0, 0], &[1, 2, 3]).unwrap();
        assert_eq!(
            s.charpoly_oracle().unwrap(),
            BiPoly::from_int_rows(&[&[0, 0, 0, 0, 1], &[], &[0, 0, -14], &[], &[9]], Var::W)
        );
        let big = JacobiPencil::from_ints(&[0; 11], &[1; 10]).unwrap();
        assert!(big.charpoly_oracle().is_err());
    }

    #[test]
    fn w_form_examples() {
        let p = JacobiPencil::from_ints(&[0, 1], &[1]).unwrap();
        assert_eq!(p.charpoly(), BiPoly::from_int_rows(&[&[0, 1, 1], &[], &[-1]], Var::W));
    }

    #[test]
    fn blocks() {
        let p = JacobiPencil::from_ints(&[0, 1, 2], &[4, 5]).unwrap();
        assert_eq!(p.extract_block(1, 3).unwrap(), p);
        assert_eq!(p.extract_block(2, 3).unwrap(), JacobiPencil::from_ints(&[1, 2], &[5]).unwrap());
        assert_eq!(p.extract_block(2, 2).unwrap(), JacobiPencil::from_ints(&[1], &[]).unwrap());
        assert!(p.extract_block(0, 2).is_err());
        assert!(p.extract_block(3, 2).is_err());
        assert!(p.extract_block(2, 4).is_err());
    }

    #[test]
    fn validation() {
        assert!(JacobiPencil::from_ints(&[], &[]).is_err());
        assert!(JacobiPencil::from_ints(&[1, 2], &[]).is_err());
        assert!(JacobiPencil::from_ints(&[1, 2], &[1, 1]).is_err());
    }

    #[test]
    fn flags_and_components() {
        let p = JacobiPencil::from_ints(&[0, 1, 2, 1], &[1, 0, 2]).unwrap();
        assert!(!p.is_connected());
        assert!(!p.has_distinct_diagonal());
        assert_eq!(p.connected_components(), vec![Block::new(1, 2), Block::new(3, 4)]);
        let q = JacobiPencil::from_ints(&[0, 1, 2], &[1, 1]).unwrap();
        assert!(q.is_connected() && q.has_distinct_diagonal());
        assert_eq!(q.connected_components(), vec![Block::new(1, 3)]);
    }
}
