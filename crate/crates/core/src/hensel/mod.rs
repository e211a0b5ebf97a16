//! Absolute irreducibility of `P(λ, t)` by subset-indexed Hensel lifting.
//!
//! Assume the diagonal entries are pairwise distinct, so that
//! `P(λ, 0) = ∏ (λ + a_i)` has simple rational roots. Each root `−a_i` then
//! continues to a branch `λ_i(t) ∈ ℚ[[t]]`, and every monic factor of `P`
//! over the complex numbers is `∏_{i ∈ S} (λ − λ_i(t))` for some subset `S`.
//! Its coefficients lie in `ℚ[[t]] ∩ ℂ[t] = ℚ[t]`, it specializes at `t = 0`
//! to `∏_{i ∈ S} (λ + a_i)`, and its `t`-degree is at most `D = deg_t P`.
//! Since the factors at `t = 0` are coprime, the lift of that specialization
//! is unique, so truncating the lift at order `D + 1` recovers the factor
//! exactly whenever it exists. Scanning subsets therefore decides absolute
//! irreducibility.
//!
//! The branches are series in `t = w²`, hence even in `w`; every factor of
//! `χ(λ, w)` is invariant under `w → −w` and descends to a factor of `P`.
//! Reducibility in `(λ, w)` and in `(λ, t)` coincide under the same
//! hypothesis.
//!
//! With repeated diagonal entries the specialization is not squarefree and
//! factors odd in `w` exist (a scalar pair gives `(λ + a − bw)(λ + a + bw)`),
//! so [`decide`] refuses such input with [`Error::Unsupported`].

mod modp;

use crate::error::{Error, Result};
use crate::exactpoly::{subsets, BiPoly, Rational, UniPoly, Var};
use crate::pencil::{diagonal_product, pairwise_distinct, JacobiPencil};

/// A set of root labels (1-based diagonal indices), canonical under
/// complementation within its universe: the smaller side, or for an even
/// split the side holding the smallest label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct SubsetSplit {
    pub indices: Vec<usize>,
}

impl SubsetSplit {
    /// Canonical representative of `indices` or its complement in `universe`.
    pub fn canonical(indices: &[usize], universe: &[usize]) -> Self {
        let mut s: Vec<usize> = indices.to_vec();
        s.sort_unstable();
        let comp: Vec<usize> = universe.iter().copied().filter(|i| !s.contains(i)).collect();
        let min = universe.iter().copied().min();
        let take_comp = comp.len() < s.len() || (comp.len() == s.len() && comp.first().copied() == min);
        Self {
            indices: if take_comp { comp } else { s },
        }
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

/// Partial Hensel lift: `P ≡ F·G mod t^order`, `F ≡ F_0`, `G ≡ G_0 mod t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftState {
    /// `f[k]` is the coefficient of `t^k` in `F`, a polynomial in `λ`.
    pub f: Vec<UniPoly>,
    pub g: Vec<UniPoly>,
    /// `(U, V)` with `U·F_0 + V·G_0 = 1`.
    pub bezout: (UniPoly, UniPoly),
    pub order: usize,
}

impl LiftState {
    pub fn f_poly(&self) -> BiPoly {
        BiPoly::new(self.f.clone(), Var::T)
    }

    pub fn g_poly(&self) -> BiPoly {
        BiPoly::new(self.g.clone(), Var::T)
    }

    /// Coefficient of `t^k` in `F·G` using the stored terms only.
    fn product_coeff(&self, k: usize) -> UniPoly {
        let mut acc = UniPoly::zero();
        for i in 0..self.f.len().min(k + 1) {
            if let Some(gj) = self.g.get(k - i) {
                acc = &acc + &(&self.f[i] * gj);
            }
        }
        acc
    }
}

/// Check that `p` is monic in `λ`, in `t`-form, and specializes at `t = 0` to
/// `∏ (λ + a_i)` over the given labelled, pairwise-distinct values.
fn check_specialization(p: &BiPoly, roots: &[(usize, Rational)]) -> Result<()> {
    if p.var() != Var::T {
        return Err(Error::TagMismatch("t", p.var().name()));
    }
    if !p.is_monic_in_lambda() {
        return Err(Error::Precondition("polynomial must be monic in λ".into()));
    }
    let values: Vec<Rational> = roots.iter().map(|(_, a)| a.clone()).collect();
    if !pairwise_distinct(&values) {
        return Err(Error::Unsupported(
            "repeated diagonal entries: P(λ, 0) is not squarefree".into(),
        ));
    }
    if p.layer(0) != diagonal_product(&values) {
        return Err(Error::Precondition(
            "P(λ, 0) does not match the given diagonal values".into(),
        ));
    }
    Ok(())
}

/// Lift the split `F_0 = ∏_{i∈S} (λ + a_i)`, `G_0 = ∏_{i∉S} (λ + a_i)` to
/// `P ≡ F·G mod t^target_order`.
pub fn lift_subset(
    p: &BiPoly,
    roots: &[(usize, Rational)],
    s: &SubsetSplit,
    target_order: usize,
) -> Result<LiftState> {
    check_specialization(p, roots)?;
    if target_order < 1 {
        return Err(Error::Precondition("target order must be ≥ 1".into()));
    }
    let (inside, outside): (Vec<_>, Vec<_>) = roots.iter().partition(|(i, _)| s.indices.contains(i));
    if inside.len() != s.size() || inside.is_empty() || outside.is_empty() {
        return Err(Error::Precondition(format!(
            "subset {:?} is not a proper nonempty subset of the root labels",
            s.indices
        )));
    }
    let f0 = diagonal_product(&inside.iter().map(|(_, a)| a.clone()).collect::<Vec<_>>());
    let g0 = diagonal_product(&outside.iter().map(|(_, a)| a.clone()).collect::<Vec<_>>());
    let (one, u, v) = f0.ext_gcd(&g0);
    debug_assert_eq!(one, UniPoly::one());
    let mut state = LiftState {
        f: vec![f0],
        g: vec![g0],
        bezout: (u, v),
        order: 1,
    };
    while state.order < target_order {
        step(p, &mut state)?;
    }
    Ok(state)
}

/// One linear lifting step from order `k` to `k + 1`.
fn step(p: &BiPoly, state: &mut LiftState) -> Result<()> {
    let k = state.order;
    let e = &p.layer(k) - &state.product_coeff(k);
    let (f0, g0) = (&state.f[0], &state.g[0]);
    // G_0 f + F_0 g = e with deg f < deg F_0
    let (_, fk) = (&state.bezout.1 * &e).div_rem(f0)?;
    let gk = (&e - &(g0 * &fk)).exact_div(f0)?;
    state.f.push(fk);
    state.g.push(gk);
    state.order += 1;
    Ok(())
}

/// Result of [`decide`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Status {
    Irreducible,
    Reducible,
}

/// One absolutely irreducible factor together with its root labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselFactor {
    pub indices: Vec<usize>,
    pub t_form: BiPoly,
    pub w_form: BiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub status: Status,
    /// Complete splitting into absolutely irreducible factors (a single
    /// entry when irreducible).
    pub factors: Vec<HenselFactor>,
    /// Subsets whose truncated lift terminated, in the order found.
    pub witnesses: Vec<SubsetSplit>,
}

impl Decision {
    /// Sorted λ-degrees of the factors.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(|f| f.indices.len()).collect();
        d.sort_unstable();
        d
    }
}

/// Smallest subset (increasing size, then lexicographic) whose truncated lift
/// is an exact factorization of `p`.
fn find_split(p: &BiPoly, roots: &[(usize, Rational)]) -> Result<Option<(SubsetSplit, BiPoly, BiPoly)>> {
    let n = roots.len();
    if n < 2 {
        return Ok(None);
    }
    let d = p.deg_outer().unwrap_or(0);
    let labels: Vec<usize> = roots.iter().map(|(i, _)| *i).collect();
    let values: Vec<Rational> = roots.iter().map(|(_, a)| a.clone()).collect();
    let filter = modp::Reduced::new(p, &values);
    for size in 1..=n / 2 {
        for pick in subsets(n, size) {
            if 2 * size == n && pick[0] != 0 {
                continue;
            }
            if filter.as_ref().is_some_and(|f| f.obstructs(&pick)) {
                continue;
            }
            let s = SubsetSplit {
                indices: pick.iter().map(|&j| labels[j]).collect(),
            };
            let state = lift_subset(p, roots, &s, d + 1)?;
            // P has no t^{D+1} term, so a terminating lift must not produce one
            if !state.product_coeff(d + 1).is_zero() {
                continue;
            }
            let (f, g) = (state.f_poly(), state.g_poly());
            if f.mul(&g)? == *p {
                return Ok(Some((s, f, g)));
            }
        }
    }
    Ok(None)
}

/// Decide absolute irreducibility of the spectral curve of a pencil with
/// pairwise-distinct diagonal entries, returning the complete factorization.
pub fn decide(p: &JacobiPencil) -> Result<Decision> {
    if !p.has_distinct_diagonal() {
        return Err(Error::Unsupported(
            "repeated diagonal entries; use the mechanisms report and monodromy orbits instead".into(),
        ));
    }
    let roots: Vec<(usize, Rational)> = p.a().iter().cloned().enumerate().map(|(i, a)| (i + 1, a)).collect();
    decide_poly(&p.continuant(), &roots)
}

/// [`decide`] for any monic `P(λ, t)` whose specialization at `t = 0` is
/// `∏ (λ + a_i)` over the labelled, pairwise-distinct `roots`.
pub fn decide_poly(p: &BiPoly, roots: &[(usize, Rational)]) -> Result<Decision> {
    check_specialization(p, roots)?;
    let mut factors = Vec::new();
    let mut witnesses = Vec::new();
    let mut rest = p.clone();
    let mut rest_roots = roots.to_vec();
    while let Some((s, f, g)) = find_split(&rest, &rest_roots)? {
        // the first hit has minimal size, so f is irreducible
        factors.push(HenselFactor {
            indices: s.indices.clone(),
            w_form: f.to_w_form()?,
            t_form: f,
        });
        rest_roots.retain(|(i, _)| !s.indices.contains(i));
        witnesses.push(s);
        rest = g;
    }
    factors.push(HenselFactor {
        indices: rest_roots.iter().map(|(i, _)| *i).collect(),
        w_form: rest.to_w_form()?,
        t_form: rest,
    });
    factors.sort_by(|a, b| a.indices.len().cmp(&b.indices.len()).then_with(|| a.indices.cmp(&b.indices)));
    let product = BiPoly::product(factors.iter().map(|f| &f.t_form), Var::T)?;
    if product != *p {
        return Err(Error::InexactDivision("Hensel factors do not multiply back to P".into()));
    }
    let status = if factors.len() > 1 {
        Status::Reducible
    } else {
        Status::Irreducible
    };
    Ok(Decision {
        status,
        factors,
        witnesses,
    })
}

/// The obstruction at one order: the `t^order` coefficient of `P − F·G` after
/// lifting to order `D + 1` and truncating.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub order: usize,
    pub residual: UniPoly,
    /// Largest absolute coefficient of the residual.
    pub norm: f64,
}

/// Obstructions at orders `1..=2D` for the split `S`. Orders up to `D` vanish
/// by construction; the lift terminates exactly when all orders above `D`
/// vanish too.
pub fn obstruction_profile(p: &JacobiPencil, s: &SubsetSplit) -> Result<Vec<Obstruction>> {
    if !p.has_distinct_diagonal() {
        return Err(Error::Unsupported("repeated diagonal entries".into()));
    }
    let cont = p.continuant();
    let roots: Vec<(usize, Rational)> = p.a().iter().cloned().enumerate().map(|(i, a)| (i + 1, a)).collect();
    let d = cont.deg_outer().unwrap_or(0);
    let state = lift_subset(&cont, &roots, s, d + 1)?;
    let residual = cont.sub(&state.f_poly().mul(&state.g_poly())?)?;
    Ok((1..=(2 * d).max(1))
        .map(|k| {
            let r = residual.layer(k);
            Obstruction {
                order: k,
                norm: r.max_abs_f64(),
                residual: r,
            }
        })
        .collect())
}

/// Number of canonical subsets scanned for `n` roots: `2^{n−1} − 1`.
pub fn canonical_subset_count(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (1usize << (n - 1)) - 1
}

/// Enumerate canonical subsets of `1..=n` in scan order.
pub fn canonical_subsets(n: usize) -> Vec<SubsetSplit> {
    let mut out = Vec::new();
    for size in 1..=n / 2 {
        for pick in subsets(n, size) {
            if 2 * size == n && pick[0] != 0 {
                continue;
            }
            out.push(SubsetSplit {
                indices: pick.iter().map(|j| j + 1).collect(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};

    fn pencil(a: &[i64], b: &[i64]) -> JacobiPencil {
        JacobiPencil::from_ints(a, b).unwrap()
    }

    fn roots(p: &JacobiPencil) -> Vec<(usize, Rational)> {
        p.a().iter().cloned().enumerate().map(|(i, a)| (i + 1, a)).collect()
    }

    #[test]
    fn canonical_forms() {
        let u = [1, 2, 3, 4];
        assert_eq!(SubsetSplit::canonical(&[2, 3, 4], &u).indices, vec![1]);
        assert_eq!(SubsetSplit::canonical(&[3, 4], &u).indices, vec![1, 2]);
        assert_eq!(SubsetSplit::canonical(&[2], &u).indices, vec![2]);
        assert_eq!(canonical_subsets(8).len(), 127);
        assert_eq!(canonical_subset_count(8), 127);
        assert_eq!(canonical_subsets(4).len(), canonical_subset_count(4));
    }

    #[test]
    fn constant_branch_lift_is_exact_at_every_order() {
        let p = pencil(&[0, 1, 2], &[1, 1]);
        let s = SubsetSplit { indices: vec![2] };
        let state = lift_subset(&p.continuant(), &roots(&p), &s, 6).unwrap();
        assert_eq!(state.f[0], UniPoly::from_ints(&[1, 1]));
        assert!(state.f[1..].iter().all(UniPoly::is_zero));
        let cof = p.continuant().div_exact(&BiPoly::lambda_plus(rat(1), Var::T)).unwrap();
        assert_eq!(state.g_poly(), cof);
    }

    #[test]
    fn quadratic_branch_series() {
        // λ(λ+1) = t: the branch through 0 is λ = t − t² + 2t³ − …
        let p = pencil(&[0, 1], &[1]);
        let s = SubsetSplit { indices: vec![1] };
        let state = lift_subset(&p.continuant(), &roots(&p), &s, 4).unwrap();
        let coeffs: Vec<Rational> = state.f.iter().map(|f| f.coeff(0)).collect();
        // F = λ − λ_1(t)
        assert_eq!(coeffs, vec![rat(0), rat(-1), rat(1), rat(-2)]);
        assert!(state.f[1..].iter().all(|f| f.degree() == Some(0)));
    }

    #[test]
    fn cut_case_splits_exactly() {
        let p = pencil(&[0, 1], &[0]);
        let s = SubsetSplit { indices: vec![1] };
        let state = lift_subset(&p.continuant(), &roots(&p), &s, 3).unwrap();
        assert_eq!(state.f_poly(), BiPoly::lambda_plus(rat(0), Var::T));
    }

    #[test]
    fn decide_examples() {
        let d = decide(&pencil(&[0, 1, 2], &[1, 1])).unwrap();
        assert_eq!(d.status, Status::Reducible);
        assert_eq!(d.witnesses, vec![SubsetSplit { indices: vec![2] }]);
        assert_eq!(d.factors[0].t_form, BiPoly::lambda_plus(rat(1), Var::T));
        assert_eq!(d.factor_degrees(), vec![1, 2]);

        assert_eq!(decide(&pencil(&[0, 1], &[1])).unwrap().status, Status::Irreducible);
        assert_eq!(decide(&pencil(&[0, 1, 2, 3], &[1, 1, 1])).unwrap().status, Status::Irreducible);
    }

    #[test]
    fn decide_refuses_repeated_diagonal() {
        assert!(matches!(decide(&pencil(&[0, 0], &[1])), Err(Error::Unsupported(_))));
        assert!(matches!(decide(&pencil(&[1, 2, 1], &[1, 1])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn decide_splits_cuts_completely() {
        let d = decide(&pencil(&[0, 1, 2, 3, 4], &[1, 0, 2, 0])).unwrap();
        assert_eq!(d.factor_degrees(), vec![1, 2, 2]);
    }

    #[test]
    fn decide_rational_parameters() {
        let p = JacobiPencil::new(
            vec![ratio(1, 2), ratio(-1, 3), rat(2)],
            vec![ratio(3, 5), rat(-1)],
        )
        .unwrap();
        assert_eq!(decide(&p).unwrap().status, Status::Irreducible);
    }

    #[test]
    fn obstruction_examples() {
        let t = obstruction_profile(&pencil(&[0, 1, 2], &[1, 1]), &SubsetSplit { indices: vec![2] }).unwrap();
        assert!(t.iter().all(|o| o.residual.is_zero()));

        let g = obstruction_profile(&pencil(&[0, 1, 2, 3], &[1, 1, 1]), &SubsetSplit { indices: vec![1, 2] })
            .unwrap();
        assert!(g[..2].iter().all(|o| o.residual.is_zero()));
        assert!(!g[2].residual.is_zero(), "order D+1 must obstruct");

        let c = obstruction_profile(&pencil(&[0, 1, 5], &[1, 0]), &SubsetSplit { indices: vec![1, 2] }).unwrap();
        assert!(c.iter().all(|o| o.residual.is_zero()));
    }
}
