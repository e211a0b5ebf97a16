//! Elementary reducibility mechanisms and verified factorization certificates.
//!
//! Four mechanisms split a spectral curve:
//!
//! * a zero coupling `b_i = 0` cuts the chain into two smaller chains;
//! * a constant branch `λ + a_j` divides the curve when `P(−a_j, t) ≡ 0`;
//! * a palindromic block commutes with the index reversal (after sign
//!   changes of basis vectors) and splits into its symmetric and
//!   antisymmetric restrictions;
//! * a scalar diagonal block `a_r = … = a_s = a` gives
//!   `χ_I = w^m q((λ + a) / w)` with `q` the characteristic polynomial of the
//!   constant off-diagonal matrix.
//!
//! Every [`Certificate`] is checked by exact multiplication before it is
//! returned; a certificate whose product does not reproduce its block's curve
//! is never emitted.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{
    factor_over_rationals, gcd_in_lambda, BiPoly, Rational, RationalFactorization, UniPoly, Var,
};
use crate::pencil::{symbolic_det, Block, JacobiPencil};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum MechanismKind {
    Cut,
    ConstantBranch,
    Palindrome,
    ScalarBlock,
}

impl MechanismKind {
    pub fn name(self) -> &'static str {
        match self {
            MechanismKind::Cut => "cut",
            MechanismKind::ConstantBranch => "constant-branch",
            MechanismKind::Palindrome => "palindrome",
            MechanismKind::ScalarBlock => "scalar-block",
        }
    }
}

/// Kind-specific payload of a [`Certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateData {
    /// Zero coupling `b_index` (1-based, global).
    Cut { index: usize },
    /// `λ + value` divides the block curve; `index` is the first diagonal
    /// position in the block carrying `value`.
    ConstantBranch { index: usize, value: Rational },
    /// Matrices of `λI + J(w)` restricted to the reversal-symmetric and
    /// antisymmetric subspaces, in the bases `e_k ± e_{m-1-k}` (plus the
    /// middle vector for odd length).
    Palindrome {
        symmetric: Vec<Vec<BiPoly>>,
        antisymmetric: Vec<Vec<BiPoly>>,
    },
    /// `q(μ) = det(μI − B_I)` and its factorization over the rationals.
    ScalarBlock {
        diagonal: Rational,
        q: UniPoly,
        rational_factors: RationalFactorization,
        /// Degrees of the factors over the complex numbers.
        absolute_degree_pattern: Vec<usize>,
    },
}

/// A verified factorization of one block's spectral curve (w-form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: MechanismKind,
    pub block: Block,
    pub factors: Vec<BiPoly>,
    pub data: CertificateData,
    pub verified: bool,
}

impl Certificate {
    fn build(
        pencil: &JacobiPencil,
        kind: MechanismKind,
        block: Block,
        factors: Vec<BiPoly>,
        data: CertificateData,
    ) -> Result<Self> {
        let mut cert = Self {
            kind,
            block,
            factors,
            data,
            verified: false,
        };
        if !cert.check(pencil)? {
            return Err(Error::InexactDivision(format!(
                "{} certificate on {block} does not multiply back to the block curve",
                kind.name()
            )));
        }
        cert.verified = true;
        Ok(cert)
    }

    /// Recompute the product of the factors and compare it with the block's
    /// spectral curve.
    pub fn check(&self, pencil: &JacobiPencil) -> Result<bool> {
        let target = pencil.extract(self.block)?.charpoly();
        if self.factors.iter().any(|f| f.deg_lambda().unwrap_or(0) == 0) {
            return Ok(false);
        }
        Ok(BiPoly::product(&self.factors, Var::W)? == target)
    }
}

/// A final factor of the mechanism iteration and the connected block it came
/// from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub block: Block,
    pub factor: BiPoly,
}

/// Outcome of [`apply_all`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MechanismReport {
    pub pencil: JacobiPencil,
    pub certificates: Vec<Certificate>,
    /// Finest common refinement of all certificates, one entry per factor.
    pub leaves: Vec<Leaf>,
    /// Curves of connected blocks (length ≥ 2) on which no mechanism applied.
    pub residual_factors: Vec<BiPoly>,
    /// Product of all leaves equals the full spectral curve.
    pub verified: bool,
}

impl MechanismReport {
    pub fn kinds(&self) -> Vec<MechanismKind> {
        let mut k: Vec<_> = self.certificates.iter().map(|c| c.kind).collect();
        k.sort();
        k.dedup();
        k
    }

    /// More than one leaf.
    pub fn is_reducible(&self) -> bool {
        self.leaves.len() > 1
    }

    /// Sorted λ-degrees of the leaves.
    pub fn leaf_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .leaves
            .iter()
            .map(|l| l.factor.deg_lambda().unwrap_or(0))
            .collect();
        d.sort_unstable();
        d
    }

    /// Sorted degrees of the absolutely irreducible pieces the certificates
    /// account for: a leaf inside a scalar block is a product of lines.
    pub fn absolute_degrees(&self) -> Vec<usize> {
        let scalar: Vec<Block> = self
            .certificates
            .iter()
            .filter(|c| c.kind == MechanismKind::ScalarBlock)
            .map(|c| c.block)
            .collect();
        let mut d: Vec<usize> = self
            .leaves
            .iter()
            .flat_map(|l| {
                let deg = l.factor.deg_lambda().unwrap_or(0);
                if scalar.contains(&l.block) {
                    vec![1; deg]
                } else {
                    vec![deg]
                }
            })
            .collect();
        d.sort_unstable();
        d
    }

    /// The certificates split the curve over the complex numbers.
    pub fn is_absolutely_reducible(&self) -> bool {
        self.absolute_degrees().len() > 1
    }
}

/// 1-based indices `i` with `b_i = 0`, ascending.
pub fn detect_cuts(p: &JacobiPencil) -> Vec<usize> {
    p.b()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_zero())
        .map(|(i, _)| i + 1)
        .collect()
}

fn require_connected(p: &JacobiPencil, blk: Block) -> Result<JacobiPencil> {
    let sub = p.extract(blk)?;
    if !sub.is_connected() {
        return Err(Error::Precondition(format!("block {blk} is not connected")));
    }
    Ok(sub)
}

/// Constant branches of a connected block: one certificate per distinct
/// value `a_j` with `P_I(−a_j, t) ≡ 0`, factoring the block curve as
/// `(λ + a_j) · cofactor`.
pub fn detect_constant_branches(p: &JacobiPencil, blk: Block) -> Result<Vec<Certificate>> {
    let sub = require_connected(p, blk)?;
    if sub.n() < 2 {
        return Ok(Vec::new());
    }
    let cont = sub.continuant();
    let chi = sub.charpoly();
    let mut seen: Vec<&Rational> = Vec::new();
    let mut out = Vec::new();
    for (offset, a) in sub.a().iter().enumerate() {
        if seen.contains(&a) {
            continue;
        }
        seen.push(a);
        if !cont.eval_lambda(&-a).is_zero() {
            continue;
        }
        let lin = BiPoly::lambda_plus(a.clone(), Var::W);
        let cofactor = chi.div_exact(&lin)?;
        out.push(Certificate::build(
            p,
            MechanismKind::ConstantBranch,
            blk,
            vec![lin, cofactor],
            CertificateData::ConstantBranch {
                index: blk.r + offset,
                value: a.clone(),
            },
        )?);
    }
    Ok(out)
}

/// `a_{r+k} = a_{s−k}` and `b_{r+k}² = b_{s−k−1}²` for all admissible `k`.
pub fn is_palindromic(p: &JacobiPencil, blk: Block) -> Result<bool> {
    let sub = p.extract(blk)?;
    let m = sub.n();
    let a = sub.a();
    let c = sub.c();
    Ok((0..m).all(|k| a[k] == a[m - 1 - k]) && (0..m.saturating_sub(1)).all(|k| c[k] == c[m - 2 - k]))
}

/// Split a connected palindromic block into its reversal-symmetric and
/// antisymmetric parts. `None` when the block is not palindromic.
pub fn detect_palindrome(p: &JacobiPencil, blk: Block) -> Result<Option<Certificate>> {
    let sub = require_connected(p, blk)?;
    let m = sub.n();
    if m < 2 {
        return Err(Error::Precondition("palindrome needs a block of length ≥ 2".into()));
    }
    if !is_palindromic(p, blk)? {
        return Ok(None);
    }
    // Conjugating by a diagonal sign matrix makes every coupling positive;
    // the normalized matrix then commutes with the reversal.
    let normalized = JacobiPencil::new(
        sub.a().to_vec(),
        sub.b().iter().map(|x| x.abs()).collect(),
    )?;
    let full = normalized.symbolic_matrix();
    let h = m / 2;
    let mut sym_basis: Vec<Vec<i64>> = (0..h).map(|k| pair_vector(m, k, 1)).collect();
    if m % 2 == 1 {
        let mut mid = vec![0; m];
        mid[h] = 1;
        sym_basis.push(mid);
    }
    let anti_basis: Vec<Vec<i64>> = (0..h).map(|k| pair_vector(m, k, -1)).collect();
    let symmetric = restrict(&full, &sym_basis);
    let antisymmetric = restrict(&full, &anti_basis);
    let factors = vec![symbolic_det(&symmetric), symbolic_det(&antisymmetric)];
    Certificate::build(
        p,
        MechanismKind::Palindrome,
        blk,
        factors,
        CertificateData::Palindrome {
            symmetric,
            antisymmetric,
        },
    )
    .map(Some)
}

/// `e_k + sign · e_{m−1−k}`.
fn pair_vector(m: usize, k: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; m];
    v[k] = 1;
    v[m - 1 - k] += sign;
    v
}

/// Matrix of the operator `full` on the invariant subspace spanned by
/// `basis`. Basis vector `j` has coordinate 1 at position `j` and disjoint
/// support, so the coordinate along `u_i` is read off at position `i`.
fn restrict(full: &[Vec<BiPoly>], basis: &[Vec<i64>]) -> Vec<Vec<BiPoly>> {
    let rep: Vec<usize> = basis
        .iter()
        .map(|u| u.iter().position(|&x| x == 1).expect("representative"))
        .collect();
    rep.iter()
        .map(|&ri| {
            basis
                .iter()
                .map(|u| {
                    u.iter().enumerate().filter(|(_, &x)| x != 0).fold(
                        BiPoly::zero(Var::W),
                        |acc, (l, &x)| {
                            acc.add(&full[ri][l].scale(&crate::exactpoly::rat(x)))
                                .expect("w-form")
                        },
                    )
                })
                .collect()
        })
        .collect()
}

/// Maximal runs `(r, s)`, `s > r`, of equal consecutive diagonal entries.
pub fn detect_scalar_blocks(p: &JacobiPencil) -> Vec<Block> {
    let a = p.a();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=a.len() {
        if i == a.len() || a[i] != a[start] {
            if i - start >= 2 {
                out.push(Block::new(start + 1, i));
            }
            start = i;
        }
    }
    out
}

/// `det(μI − B)` for the constant off-diagonal matrix with squared couplings `c`.
pub fn offdiagonal_charpoly(c: &[Rational]) -> UniPoly {
    let mu = UniPoly::monomial(crate::exactpoly::rat(1), 1);
    let mut prev2 = UniPoly::one();
    let mut prev1 = mu.clone();
    for ck in c {
        let next = &(&mu * &prev1) - &prev2.scale(ck);
        prev2 = std::mem::replace(&mut prev1, next);
    }
    prev1
}

/// `w^deg · f((λ + a) / w)` for a univariate `f`.
pub fn homogenize(f: &UniPoly, a: &Rational) -> BiPoly {
    let d = f.degree().unwrap_or(0);
    let shift = UniPoly::linear(a.clone());
    let mut layers = vec![UniPoly::zero(); d + 1];
    let mut power = UniPoly::one();
    for k in 0..=d {
        layers[d - k] = power.scale(&f.coeff(k));
        power = &power * &shift;
    }
    BiPoly::new(layers, Var::W)
}

/// Certificate for a connected block with constant diagonal: the curve is the
/// homogenization of `q(μ) = det(μI − B_I)` at `λ + a`, and its factors over
/// the rationals are the homogenizations of the rational factors of `q`.
pub fn scalar_block_certificate(p: &JacobiPencil, blk: Block) -> Result<Certificate> {
    let sub = require_connected(p, blk)?;
    let m = sub.n();
    if m < 2 {
        return Err(Error::Precondition("scalar block needs length ≥ 2".into()));
    }
    let a = sub.a()[0].clone();
    if sub.a().iter().any(|x| *x != a) {
        return Err(Error::Precondition(format!("block {blk} is not scalar")));
    }
    let q = offdiagonal_charpoly(sub.c());
    debug_assert_eq!(q.degree(), Some(m));
    let whole = homogenize(&q, &a);
    if whole != sub.charpoly() {
        return Err(Error::InexactDivision(format!(
            "homogenization identity failed on {blk}"
        )));
    }
    let rational_factors = factor_over_rationals(&q);
    let factors: Vec<BiPoly> = rational_factors
        .factors
        .iter()
        .flat_map(|(f, mult)| std::iter::repeat_n(homogenize(f, &a), *mult))
        .collect();
    Certificate::build(
        p,
        MechanismKind::ScalarBlock,
        blk,
        factors,
        CertificateData::ScalarBlock {
            diagonal: a,
            q,
            rational_factors,
            absolute_degree_pattern: vec![1; m],
        },
    )
}

/// Split every leaf by gcds with the given factors until nothing changes.
fn refine(leaves: Vec<BiPoly>, by: &[BiPoly]) -> Result<Vec<BiPoly>> {
    let mut leaves = leaves;
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(leaves.len() + 1);
        for leaf in leaves {
            let dl = leaf.deg_lambda().unwrap_or(0);
            let mut split = None;
            for f in by {
                let g = gcd_in_lambda(&leaf, f)?;
                let dg = g.deg_lambda().unwrap_or(0);
                if dg > 0 && dg < dl && g.lambda_lead().is_constant() {
                    split = Some(g);
                    break;
                }
            }
            match split {
                Some(g) => {
                    let rest = leaf.div_exact(&g)?;
                    next.push(g);
                    next.push(rest);
                    changed = true;
                }
                None => next.push(leaf),
            }
        }
        leaves = next;
        if !changed {
            return Ok(leaves);
        }
    }
}

/// Apply every mechanism: cut at zero couplings, then on each connected block
/// collect constant-branch, palindrome and scalar-block certificates, and
/// split the block curve into the finest factorization compatible with all of
/// them (re-extracting constant branches from the pieces).
pub fn apply_all(p: &JacobiPencil) -> Result<MechanismReport> {
    let mut certificates = Vec::new();
    let n = p.n();

    let cuts = detect_cuts(p);
    let mut start = 1;
    for &i in &cuts {
        let left = p.extract_block(start, i)?.charpoly();
        let right = p.extract_block(i + 1, n)?.charpoly();
        certificates.push(Certificate::build(
            p,
            MechanismKind::Cut,
            Block::new(start, n),
            vec![left, right],
            CertificateData::Cut { index: i },
        )?);
        start = i + 1;
    }

    let mut leaves = Vec::new();
    let mut residual_factors = Vec::new();
    for blk in p.connected_components() {
        let sub = p.extract(blk)?;
        let chi = sub.charpoly();
        if blk.size() < 2 {
            leaves.push(Leaf { block: blk, factor: chi });
            continue;
        }
        let mut block_certs = detect_constant_branches(p, blk)?;
        if let Some(c) = detect_palindrome(p, blk)? {
            block_certs.push(c);
        }
        if detect_scalar_blocks(&sub) == vec![Block::new(1, blk.size())] {
            block_certs.push(scalar_block_certificate(p, blk)?);
        }
        if block_certs.is_empty() {
            residual_factors.push(chi.clone());
            leaves.push(Leaf { block: blk, factor: chi });
            continue;
        }
        let mut splitters: Vec<BiPoly> = block_certs
            .iter()
            .flat_map(|c| c.factors.iter().cloned())
            .collect();
        let mut values: Vec<&Rational> = sub.a().iter().collect();
        values.dedup();
        splitters.extend(values.into_iter().map(|a| BiPoly::lambda_plus(a.clone(), Var::W)));
        for f in refine(vec![chi], &splitters)? {
            leaves.push(Leaf { block: blk, factor: f });
        }
        certificates.extend(block_certs);
    }

    let product = BiPoly::product(leaves.iter().map(|l| &l.factor), Var::W)?;
    let verified = product == p.charpoly();
    if !verified {
        return Err(Error::InexactDivision(
            "mechanism leaves do not multiply back to the spectral curve".into(),
        ));
    }
    Ok(MechanismReport {
        pencil: p.clone(),
        certificates,
        leaves,
        residual_factors,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn pencil(a: &[i64], b: &[i64]) -> JacobiPencil {
        JacobiPencil::from_ints(a, b).unwrap()
    }

    #[test]
    fn scalar_leaves_count_as_lines() {
        // q(μ) = μ(μ² − 5): the quadratic leaf is a pair of lines over ℂ
        let r = apply_all(&pencil(&[3, 3, 3], &[1, 2])).unwrap();
        assert_eq!(r.leaf_degrees(), vec![1, 2]);
        assert_eq!(r.absolute_degrees(), vec![1, 1, 1]);
        assert!(r.is_absolutely_reducible());
        let g = apply_all(&pencil(&[0, 1], &[1])).unwrap();
        assert_eq!(g.absolute_degrees(), vec![2]);
    }

    #[test]
    fn cut_indices() {
        assert_eq!(detect_cuts(&pencil(&[0, 0, 0, 0], &[1, 0, 2])), vec![2]);
        assert!(detect_cuts(&pencil(&[0, 0, 0], &[1, 1])).is_empty());
        assert_eq!(detect_cuts(&pencil(&[0, 0, 0], &[0, 0])), vec![1, 2]);
    }

    #[test]
    fn constant_branch_examples() {
        let p = pencil(&[0, 1, 2], &[1, 1]);
        let c = detect_constant_branches(&p, p.full_block()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].data, CertificateData::ConstantBranch { index: 2, value: rat(1) });
        assert!(c[0].verified);

        let q = pencil(&[0, 1, 5], &[1, 1]);
        assert!(detect_constant_branches(&q, q.full_block()).unwrap().is_empty());

        let r = pencil(&[0, 1, 0], &[1, 1]);
        let c = detect_constant_branches(&r, r.full_block()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].data, CertificateData::ConstantBranch { index: 1, value: rat(0) });

        let cut = pencil(&[0, 1, 2], &[1, 0]);
        assert!(detect_constant_branches(&cut, cut.full_block()).is_err());
    }

    #[test]
    fn palindrome_degree_two() {
        let p = pencil(&[3, 3], &[2]);
        let c = detect_palindrome(&p, p.full_block()).unwrap().unwrap();
        // (λ + 3 − 2w)(λ + 3 + 2w)
        let plus = BiPoly::from_int_rows(&[&[3, 1], &[2]], Var::W);
        let minus = BiPoly::from_int_rows(&[&[3, 1], &[-2]], Var::W);
        assert!(c.factors.contains(&plus) && c.factors.contains(&minus));
    }

    #[test]
    fn palindrome_degree_four() {
        let p = pencil(&[0, 1, 1, 0], &[1, 2, 1]);
        let c = detect_palindrome(&p, p.full_block()).unwrap().unwrap();
        // λ(λ + 1 ± 2w) − w²
        let plus = BiPoly::from_int_rows(&[&[0, 1, 1], &[0, 2], &[-1]], Var::W);
        let minus = BiPoly::from_int_rows(&[&[0, 1, 1], &[0, -2], &[-1]], Var::W);
        assert!(c.factors.contains(&plus) && c.factors.contains(&minus));
        assert!(c.check(&p).unwrap());
    }

    #[test]
    fn palindrome_with_sign_flips_and_odd_length() {
        let p = pencil(&[2, 5, 7, 5, 2], &[3, -4, 4, -3]);
        let c = detect_palindrome(&p, p.full_block()).unwrap().unwrap();
        let degs: Vec<_> = c.factors.iter().map(|f| f.deg_lambda().unwrap()).collect();
        assert_eq!(degs, vec![3, 2]);
        assert!(c.verified);
        let not = pencil(&[2, 5, 7, 5, 3], &[3, 4, 4, 3]);
        assert!(detect_palindrome(&not, not.full_block()).unwrap().is_none());
    }

    #[test]
    fn scalar_runs() {
        assert_eq!(detect_scalar_blocks(&pencil(&[0, 0, 0, 0], &[1, 2, 3])), vec![Block::new(1, 4)]);
        assert!(detect_scalar_blocks(&pencil(&[1, 2, 3], &[1, 1])).is_empty());
        assert_eq!(
            detect_scalar_blocks(&pencil(&[5, 5, 1, 1], &[1, 1, 1])),
            vec![Block::new(1, 2), Block::new(3, 4)]
        );
    }

    #[test]
    fn scalar_quartic() {
        let p = pencil(&[0, 0, 0, 0], &[1, 2, 3]);
        let c = scalar_block_certificate(&p, p.full_block()).unwrap();
        let CertificateData::ScalarBlock { q, absolute_degree_pattern, rational_factors, .. } = &c.data
        else {
            panic!("wrong payload");
        };
        assert_eq!(*q, UniPoly::from_ints(&[9, 0, -14, 0, 1]));
        assert_eq!(absolute_degree_pattern, &vec![1, 1, 1, 1]);
        assert_eq!(rational_factors.factors.len(), 1);
        assert_eq!(c.factors.len(), 1);
    }

    #[test]
    fn scalar_pair_splits_into_lines() {
        let p = pencil(&[0, 0], &[1]);
        let c = scalar_block_certificate(&p, p.full_block()).unwrap();
        assert_eq!(c.factors.len(), 2);
        let lm = BiPoly::from_int_rows(&[&[0, 1], &[-1]], Var::W);
        let lp = BiPoly::from_int_rows(&[&[0, 1], &[1]], Var::W);
        assert!(c.factors.contains(&lm) && c.factors.contains(&lp));
        assert!(scalar_block_certificate(&pencil(&[0, 1], &[1]), Block::new(1, 2)).is_err());
    }

    #[test]
    fn apply_all_examples() {
        let cut = apply_all(&pencil(&[0, 1, 2], &[1, 0])).unwrap();
        assert_eq!(cut.kinds(), vec![MechanismKind::Cut]);
        assert_eq!(cut.leaf_degrees(), vec![1, 2]);

        let branch = apply_all(&pencil(&[0, 1, 2], &[1, 1])).unwrap();
        assert_eq!(branch.kinds(), vec![MechanismKind::ConstantBranch]);
        assert_eq!(branch.leaf_degrees(), vec![1, 2]);

        let generic = apply_all(&pencil(&[3, -1, 4, 1, -5], &[2, 7, 1, 8])).unwrap();
        assert!(generic.certificates.is_empty());
        assert_eq!(generic.residual_factors.len(), 1);
        assert!(!generic.is_reducible());
    }

    #[test]
    fn apply_all_combines_palindrome_and_branch() {
        // a1 = a3 makes λ + a1 a branch; the block is also palindromic
        let r = apply_all(&pencil(&[0, 1, 0], &[1, 1])).unwrap();
        assert!(r.kinds().contains(&MechanismKind::Palindrome));
        assert!(r.kinds().contains(&MechanismKind::ConstantBranch));
        assert_eq!(r.leaf_degrees(), vec![1, 2]);
    }

    #[test]
    fn apply_all_scalar_degree_eight() {
        let p = pencil(&[3; 8], &[1, 2, 3, 4, 5, 6, 7]);
        let r = apply_all(&p).unwrap();
        assert!(r.verified);
        assert!(r.kinds().contains(&MechanismKind::ScalarBlock));
    }
}
