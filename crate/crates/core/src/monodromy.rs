//! Numeric monodromy of the covering `χ(λ, w) = 0 → ℂ_w`.
//!
//! Branch points are the roots of the exact discriminant of `χ` in `λ`
//! (computed in `t = w²`, whose squarefree part is solved numerically and
//! then square-rooted). Each branch point gets a keyhole loop from a common
//! base point: a straight segment in, a counterclockwise circle, the same
//! segment out. The `λ`-roots are continued along each loop by warm-started
//! Aberth steps (companion eigenvalues as a fallback), matching nearest
//! neighbours. A step is accepted only when every root moves less than a
//! third of the smallest root separation and the step in `w` stays well
//! inside the distance to the nearest branch point.
//!
//! With repeated diagonal entries, sheets belonging to different components
//! can touch to high order at `w = 0`; the components of a verified
//! mechanism splitting are then continued one by one along the same loops.
//!
//! Permutations are written in one-line notation on 1-based sheet labels:
//! `perm[i] = j` means the sheet labelled `i + 1` arrives at the position of
//! sheet `j`. Paths compose left to right, so `σ·τ` applies `σ` first.
//!
//! Nothing here is a certificate; the exact modules own all decisions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exactpoly::{discriminant_in_lambda, rational_to_f64, BiPoly, Rational, UniPoly};
use crate::mechanisms::apply_all;
use crate::numeric::{aberth_warm, poly_roots, ComplexApprox};
use crate::pencil::JacobiPencil;

/// Smallest accepted step in `w`, relative to the distance to the nearest
/// branch point.
const MIN_STEP: f64 = 1e-6;
/// Roots may move at most this fraction of the minimal separation per step.
const MOVE_RATIO: f64 = 1.0 / 3.0;
/// A step in `w` may cover at most this fraction of the distance to the
/// nearest branch point.
const W_STEP_RATIO: f64 = 0.25;
/// Group closure is enumerated only up to this many sheets.
const MAX_CLOSURE_N: usize = 8;

/// How sheets were labelled at the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Labeling {
    /// Sheet `i` continues from `λ = −a_i` at `w = 0`.
    Continuation,
    /// Sheets sorted by `(re, im)` of `λ` at the base point.
    Lexicographic,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MonodromyReport {
    pub base_point: ComplexApprox,
    pub branch_points: Vec<ComplexApprox>,
    pub loop_radii: Vec<f64>,
    /// One permutation per branch point, same order, 1-based one-line form.
    pub permutations: Vec<Vec<usize>>,
    /// Monodromy of the counterclockwise circle `|w| = |w_0|`.
    pub infinity: Vec<usize>,
    /// Product of the loop permutations in angular order equals `infinity`.
    pub consistency: bool,
    /// `None` above the closure size limit.
    pub group_order: Option<u64>,
    pub orbits: Vec<Vec<usize>>,
    /// Worst ratio of root movement to root separation over accepted steps.
    pub certified_step: f64,
    pub labeling: Labeling,
    /// Degrees of the exact components continued separately (a single entry
    /// `n` when the whole curve is tracked at once).
    pub components: Vec<usize>,
}

impl MonodromyReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Sorted orbit sizes, one per absolutely irreducible component.
pub fn orbit_factor_degrees(r: &MonodromyReport) -> Vec<usize> {
    let mut d: Vec<usize> = r.orbits.iter().map(Vec::len).collect();
    d.sort_unstable();
    d
}

/// Roots of the exact discriminant of `χ` in `λ`, deduplicated.
pub fn branch_points(p: &JacobiPencil) -> Result<Vec<ComplexApprox>> {
    Ok(branch_points_raw(p)?
        .into_iter()
        .filter_map(ComplexApprox::new)
        .collect())
}

fn branch_points_raw(p: &JacobiPencil) -> Result<Vec<Complex64>> {
    if p.n() < 2 {
        return Err(Error::Precondition("branch points need n ≥ 2".into()));
    }
    let disc = discriminant_in_lambda(&p.continuant())?;
    if disc.is_zero() {
        return Err(Error::Precondition(
            "χ is not squarefree in λ; factor it before computing monodromy".into(),
        ));
    }
    let mut sqf = disc.squarefree_part();
    let mut out = Vec::new();
    if sqf.coeff(0).is_zero() && !sqf.is_zero() {
        out.push(Complex64::new(0.0, 0.0));
        sqf = sqf.exact_div(&UniPoly::monomial(Rational::one(), 1))?;
    }
    let coeffs: Vec<Complex64> = sqf.coeffs().iter().map(|c| Complex64::new(rational_to_f64(c), 0.0)).collect();
    for t in refine_roots(&sqf, &poly_roots(&coeffs)) {
        let w = t.sqrt();
        out.push(w);
        out.push(-w);
    }
    let scale = 1.0 + out.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut merged: Vec<Complex64> = Vec::new();
    for z in out {
        if merged.iter().all(|m| (m - z).norm() >= 1e-8 * scale) {
            merged.push(z);
        }
    }
    merged.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(merged)
}

/// Complex fixed-point numbers: `re / 2^FIXED_BITS + i·im / 2^FIXED_BITS`.
#[derive(Clone, Debug, PartialEq)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

const FIXED_BITS: usize = 192;

impl Fixed {
    fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn real(x: BigInt) -> Self {
        Self { re: x, im: BigInt::zero() }
    }

    fn one() -> Self {
        Self::real(BigInt::one() << FIXED_BITS)
    }

    fn from_c64(z: Complex64) -> Self {
        let cvt = |x: f64| {
            let r = Rational::from_float(x).unwrap_or_else(Rational::zero);
            (r * Rational::from_integer(BigInt::one() << FIXED_BITS)).round().to_integer()
        };
        Self {
            re: cvt(z.re),
            im: cvt(z.im),
        }
    }

    fn to_c64(&self) -> Complex64 {
        let den = BigInt::one() << FIXED_BITS;
        let cvt = |x: &BigInt| rational_to_f64(&Rational::new(x.clone(), den.clone()));
        Complex64::new(cvt(&self.re), cvt(&self.im))
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: (&self.re * &o.re - &self.im * &o.im) >> FIXED_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> FIXED_BITS,
        }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        let d = &o.re * &o.re + &o.im * &o.im;
        if d.is_zero() {
            return None;
        }
        Some(Self {
            re: ((&self.re * &o.re + &self.im * &o.im) << FIXED_BITS) / &d,
            im: ((&self.im * &o.re - &self.re * &o.im) << FIXED_BITS) / &d,
        })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `p(z)` and `p'(z)` by Horner for integer coefficients.
    fn horner(coeffs: &[BigInt], z: &Self) -> (Self, Self) {
        let (mut v, mut d) = (Self::zero(), Self::zero());
        for c in coeffs.iter().rev() {
            d = d.mul(z).add(&v);
            v = v.mul(z).add(&Self::real(c << FIXED_BITS));
        }
        (v, d)
    }
}

/// Aberth iterations on the exact polynomial in fixed-point arithmetic.
/// Near pairs, which double precision smears together, stay apart because
/// each root is repelled by the others.
fn refine_roots(p: &UniPoly, approx: &[Complex64]) -> Vec<Complex64> {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let coeffs: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let mut z: Vec<Fixed> = approx.iter().map(|&w| Fixed::from_c64(w)).collect();
    let one = Fixed::one();
    for _ in 0..8 {
        let mut moved: f64 = 0.0;
        for i in 0..z.len() {
            let (v, d) = Fixed::horner(&coeffs, &z[i]);
            if v.is_zero() {
                continue;
            }
            let Some(newton) = v.div(&d) else { continue };
            let mut repel = Fixed::zero();
            for j in 0..z.len() {
                if j != i {
                    if let Some(inv) = one.div(&z[i].sub(&z[j])) {
                        repel = repel.add(&inv);
                    }
                }
            }
            let Some(step) = newton.div(&one.sub(&newton.mul(&repel))) else { continue };
            let size = step.to_c64().norm() / (1.0 + z[i].to_c64().norm());
            if !size.is_finite() {
                continue;
            }
            moved = moved.max(size);
            z[i] = z[i].sub(&step);
        }
        if moved < 1e-45 {
            break;
        }
    }
    z.iter().map(Fixed::to_c64).collect()
}

/// One exact component of `χ(λ, w)` with floating coefficients, for root
/// continuation.
struct Cover {
    /// `table[k][j]` is the coefficient of `w^k λ^j`.
    table: Vec<Vec<f64>>,
    n: usize,
    branch: Vec<Complex64>,
}

impl Cover {
    /// `chi` must be in w-form.
    fn new(chi: &BiPoly, branch: Vec<Complex64>) -> Self {
        let table = chi.layers().iter().map(UniPoly::to_f64).collect();
        Self {
            table,
            n: chi.deg_lambda().unwrap_or(0),
            branch,
        }
    }

    fn coefficients_at(&self, w: Complex64) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); self.n + 1];
        let mut wk = Complex64::new(1.0, 0.0);
        for row in &self.table {
            for (j, v) in row.iter().enumerate() {
                c[j] += wk * v;
            }
            wk *= w;
        }
        c
    }

    fn roots_at(&self, w: Complex64) -> Vec<Complex64> {
        poly_roots(&self.coefficients_at(w))
    }

    /// Roots at `w`, warm-started from `guess`.
    fn roots_near(&self, w: Complex64, guess: &[Complex64]) -> Vec<Complex64> {
        let c = self.coefficients_at(w);
        aberth_warm(&c, guess, 30).unwrap_or_else(|| poly_roots(&c))
    }

    fn nearest_branch(&self, w: Complex64) -> f64 {
        self.branch.iter().map(|b| (b - w).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Continue `start` (roots at `path(0)`) to `path(1)`. Returns the end
    /// roots in the same order and the worst accepted move ratio.
    fn track(&self, path: &dyn Fn(f64) -> Complex64, start: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
        let mut cur = start.to_vec();
        let mut s = 0.0;
        let mut h: f64 = 1.0 / 16.0;
        let mut worst: f64 = 0.0;
        while s < 1.0 {
            let w0 = path(s);
            // keep the w-step inside the reach of the nearest branch point
            let reach = W_STEP_RATIO * self.nearest_branch(w0);
            let speed = (path((s + 1e-9).min(1.0)) - path((s - 1e-9).max(0.0))).norm()
                / ((s + 1e-9).min(1.0) - (s - 1e-9).max(0.0));
            if speed > 0.0 {
                h = h.min(reach / speed);
            }
            h = h.min(1.0 - s);
            let accepted = match_roots(&cur, &self.roots_near(path(s + h), &cur));
            match accepted {
                Some((next, ratio)) => {
                    cur = next;
                    worst = worst.max(ratio);
                    s += h;
                    h *= 1.5;
                }
                None => {
                    h /= 2.0;
                    let local = self.nearest_branch(w0).min(1.0);
                    if (path(s + h) - w0).norm() < MIN_STEP * local || h < 1e-14 {
                        return Err(Error::Tracking(format!(
                            "root separation certificate failed near w = {:.6e}{:+.6e}i",
                            w0.re, w0.im
                        )));
                    }
                }
            }
        }
        Ok((cur, worst))
    }
}

fn min_separation(z: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            m = m.min((z[i] - z[j]).norm());
        }
    }
    m
}

/// Nearest-neighbour assignment of `next` to `cur`, accepted when every root
/// moves less than a third of both separations.
fn match_roots(cur: &[Complex64], next: &[Complex64]) -> Option<(Vec<Complex64>, f64)> {
    if next.len() != cur.len() {
        return None;
    }
    let sep = min_separation(cur).min(min_separation(next));
    if cur.len() > 1 && (sep.is_nan() || sep <= 0.0) {
        return None;
    }
    let mut used = vec![false; next.len()];
    let mut out = Vec::with_capacity(cur.len());
    let mut worst: f64 = 0.0;
    for z in cur {
        let (j, d) = next
            .iter()
            .enumerate()
            .map(|(j, y)| (j, (y - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        let ratio = if cur.len() > 1 { d / sep } else { 0.0 };
        if used[j] || ratio >= MOVE_RATIO {
            return None;
        }
        used[j] = true;
        worst = worst.max(ratio);
        out.push(next[j]);
    }
    Some((out, worst))
}

/// Which base-root position each tracked root ended at.
fn permutation_of(base: &[Complex64], end: &[Complex64]) -> Result<Vec<usize>> {
    let (matched, _) = match_roots(end, base)
        .ok_or_else(|| Error::Tracking("loop end does not match the base fibre".into()))?;
    matched
        .iter()
        .map(|z| {
            base.iter()
                .position(|b| b == z)
                .map(|j| j + 1)
                .ok_or_else(|| Error::Tracking("loop end does not match the base fibre".into()))
        })
        .collect()
}

/// Distance from `c` to the segment `[p, q]`.
fn segment_distance(c: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (c - p).norm();
    }
    let s = ((c - p) * d.conj()).re / len2;
    (c - (p + d * s.clamp(0.0, 1.0))).norm()
}

/// Base point, fibre labels and loop geometry shared by all loops.
///
/// The sheets may be split over several exact components of `χ`, each
/// continued on its own; `labels[k][i]` is the global 1-based label of root
/// `i` of component `k`.
struct Setup {
    parts: Vec<Cover>,
    branch: Vec<Complex64>,
    base: Complex64,
    base_roots: Vec<Vec<Complex64>>,
    labels: Vec<Vec<usize>>,
    labeling: Labeling,
    radii: Vec<f64>,
    worst: f64,
}

fn loop_radius(branch: &[Complex64], j: usize, base: Complex64) -> f64 {
    let c = branch[j];
    let nearest = branch
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, b)| (b - c).norm())
        .fold((base - c).norm(), f64::min);
    (nearest / 3.0).max(1e-6)
}

/// Curves to continue separately. Repeated diagonal entries make sheets of
/// different components touch to high order at `w = 0`, beyond what double
/// precision separates, so a verified mechanism splitting is used there.
fn components(p: &JacobiPencil) -> Result<Vec<BiPoly>> {
    if !p.has_distinct_diagonal() {
        let report = apply_all(p)?;
        if report.verified && report.is_reducible() {
            return Ok(report.leaves.into_iter().map(|l| l.factor).collect());
        }
    }
    Ok(vec![p.charpoly()])
}

impl Setup {
    fn new(p: &JacobiPencil) -> Result<Self> {
        let branch = branch_points_raw(p)?;
        let big = 2.0 * (1.0 + branch.iter().map(|z| z.norm()).fold(0.0, f64::max));
        let distinct = p.has_distinct_diagonal();
        // pick the direction whose rays keep farthest from every branch point
        let mut best = (f64::NEG_INFINITY, Complex64::new(big, 0.0));
        for k in 0..48 {
            let theta = 0.05 + (k as f64) * PI / 24.0;
            let base = Complex64::from_polar(big, theta);
            let mut score = f64::INFINITY;
            for (j, &c) in branch.iter().enumerate() {
                for (k2, &other) in branch.iter().enumerate() {
                    if k2 != j {
                        score = score.min(segment_distance(other, base, c) / (1.0 + other.norm()));
                    }
                }
                if distinct {
                    score = score.min(segment_distance(c, Complex64::new(0.0, 0.0), base) / (1.0 + c.norm()));
                }
            }
            if score > best.0 + 1e-12 {
                best = (score, base);
            }
        }
        let base = best.1;
        let radii = (0..branch.len()).map(|j| loop_radius(&branch, j, base)).collect();
        let parts: Vec<Cover> = components(p)?
            .iter()
            .map(|f| Cover::new(f, branch.clone()))
            .collect();
        let mut worst: f64 = 0.0;
        let mut base_roots = Vec::with_capacity(parts.len());
        let mut labels = Vec::with_capacity(parts.len());
        let labeling = if distinct {
            let diag: Vec<Complex64> = p.a().iter().map(|a| Complex64::new(-rational_to_f64(a), 0.0)).collect();
            let mut used = vec![false; diag.len()];
            for part in &parts {
                let mut start = Vec::new();
                let mut lab = Vec::new();
                for z in part.roots_at(Complex64::new(0.0, 0.0)) {
                    let i = (0..diag.len())
                        .filter(|&i| !used[i])
                        .min_by(|&x, &y| (diag[x] - z).norm().total_cmp(&(diag[y] - z).norm()))
                        .ok_or_else(|| Error::Tracking("component roots do not match the diagonal".into()))?;
                    used[i] = true;
                    start.push(diag[i]);
                    lab.push(i + 1);
                }
                let (end, w) = part.track(&|s| base * s, &start)?;
                worst = worst.max(w);
                base_roots.push(end);
                labels.push(lab);
            }
            Labeling::Continuation
        } else {
            let mut all: Vec<(Complex64, usize, usize)> = Vec::new();
            for (k, part) in parts.iter().enumerate() {
                let r = part.roots_at(base);
                all.extend(r.iter().enumerate().map(|(i, &z)| (z, k, i)));
                labels.push(vec![0; r.len()]);
                base_roots.push(r);
            }
            all.sort_by(|x, y| x.0.re.total_cmp(&y.0.re).then(x.0.im.total_cmp(&y.0.im)));
            for (label, &(_, k, i)) in all.iter().enumerate() {
                labels[k][i] = label + 1;
            }
            Labeling::Lexicographic
        };
        Ok(Self {
            parts,
            branch,
            base,
            base_roots,
            labels,
            labeling,
            radii,
            worst,
        })
    }

    fn n(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    /// Continue every component along the concatenated `paths` and return the
    /// global permutation.
    fn permutation_along(&self, paths: &[&dyn Fn(f64) -> Complex64]) -> Result<(Vec<usize>, f64)> {
        let mut perm = identity(self.n());
        let mut worst: f64 = 0.0;
        for (k, part) in self.parts.iter().enumerate() {
            let mut cur = self.base_roots[k].clone();
            for path in paths {
                let (next, w) = part.track(*path, &cur)?;
                worst = worst.max(w);
                cur = next;
            }
            let local = permutation_of(&self.base_roots[k], &cur)?;
            for (i, &j) in local.iter().enumerate() {
                perm[self.labels[k][i] - 1] = self.labels[k][j - 1];
            }
        }
        Ok((perm, worst))
    }

    /// Keyhole loop around `center`: segment in, counterclockwise circle,
    /// segment out.
    fn keyhole(&self, center: Complex64, radius: f64) -> Result<(Vec<usize>, f64)> {
        let u = (self.base - center) / (self.base - center).norm();
        let entry = center + u * radius;
        let base = self.base;
        self.permutation_along(&[
            &|s| base + (entry - base) * s,
            &|s| center + u * radius * Complex64::from_polar(1.0, 2.0 * PI * s),
            &|s| entry + (base - entry) * s,
        ])
    }

    fn infinity(&self) -> Result<(Vec<usize>, f64)> {
        let base = self.base;
        self.permutation_along(&[&|s| base * Complex64::from_polar(1.0, 2.0 * PI * s)])
    }
}

/// Monodromy of a single counterclockwise loop of the given radius around
/// `center`, based at the default base point.
pub fn track_loop(p: &JacobiPencil, center: ComplexApprox, radius: f64) -> Result<Vec<usize>> {
    let setup = Setup::new(p)?;
    let c = center.z();
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::Precondition("loop radius must be positive".into()));
    }
    for b in &setup.branch {
        if ((b - c).norm() - radius).abs() < 0.1 * radius {
            return Err(Error::Precondition(
                "loop passes within 0.1·radius of a branch point".into(),
            ));
        }
    }
    if (setup.base - c).norm() <= radius {
        return Err(Error::Precondition("base point lies inside the loop".into()));
    }
    Ok(setup.keyhole(c, radius)?.0)
}

/// Loop permutations, generated group and orbit partition.
pub fn monodromy_group(p: &JacobiPencil) -> Result<MonodromyReport> {
    let setup = Setup::new(p)?;
    let branch = setup.branch.clone();
    let loops: Vec<(Vec<usize>, f64)> = branch
        .par_iter()
        .zip(setup.radii.par_iter())
        .map(|(&c, &r)| setup.keyhole(c, r))
        .collect::<Result<_>>()?;
    let (infinity, w_inf) = setup.infinity()?;
    let n = p.n();
    let mut components: Vec<usize> = setup.parts.iter().map(|c| c.n).collect();
    components.sort_unstable();
    let perms: Vec<Vec<usize>> = loops.iter().map(|(q, _)| q.clone()).collect();
    let worst = loops.iter().map(|l| l.1).fold(setup.worst.max(w_inf), f64::max);

    // counterclockwise circle through the base point sweeps the branch
    // points in order of decreasing angle as seen from the base point
    let inward = -setup.base;
    let mut order: Vec<usize> = (0..branch.len()).collect();
    let angle = |j: usize| ((branch[j] - setup.base) / inward).arg();
    order.sort_by(|&x, &y| angle(y).total_cmp(&angle(x)));
    let product = order
        .iter()
        .fold(identity(n), |acc, &j| compose(&acc, &perms[j]));
    let consistency = product == infinity;

    Ok(MonodromyReport {
        base_point: ComplexApprox::new(setup.base).expect("finite base point"),
        branch_points: branch.iter().filter_map(|&z| ComplexApprox::new(z)).collect(),
        loop_radii: setup.radii.clone(),
        group_order: (n <= MAX_CLOSURE_N).then(|| group_order(&perms, n)),
        orbits: orbits(&perms, n),
        permutations: perms,
        infinity,
        consistency,
        certified_step: worst,
        labeling: setup.labeling,
        components,
    })
}

pub fn identity(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// Left-to-right product: apply `a`, then `b`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i - 1]).collect()
}

/// Order of the group generated by `gens` (breadth-first closure).
pub fn group_order(gens: &[Vec<usize>], n: usize) -> u64 {
    let id = identity(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len() as u64
}

/// Orbit partition of `{1..n}` under `gens`, each orbit sorted, orbits
/// ordered by smallest element.
pub fn orbits(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for g in gens {
        for (i, &j) in g.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j - 1));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_slot[r] {
            Some(k) => out[k].push(i + 1),
            None => {
                root_slot[r] = Some(out.len());
                out.push(vec![i + 1]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil(a: &[i64], b: &[i64]) -> JacobiPencil {
        JacobiPencil::from_ints(a, b).unwrap()
    }

    #[test]
    fn quadratic_branch_points_are_imaginary() {
        let bp = branch_points(&pencil(&[0, 1], &[1])).unwrap();
        assert_eq!(bp.len(), 2);
        for z in &bp {
            assert!(z.re.abs() < 1e-12 && (z.im.abs() - 0.5).abs() < 1e-12);
        }
        let scalar = branch_points(&pencil(&[0, 0], &[1])).unwrap();
        assert_eq!(scalar, vec![ComplexApprox { re: 0.0, im: 0.0 }]);
        assert!(branch_points(&pencil(&[3], &[])).is_err());
    }

    #[test]
    fn loop_around_quadratic_branch_point_swaps() {
        let p = pencil(&[0, 1], &[1]);
        let c = ComplexApprox { re: 0.0, im: 0.5 };
        assert_eq!(track_loop(&p, c, 0.2).unwrap(), vec![2, 1]);
        let far = ComplexApprox { re: 1.5, im: 0.0 };
        assert_eq!(track_loop(&p, far, 0.2).unwrap(), vec![1, 2]);
    }

    #[test]
    fn generic_cubic_has_full_group() {
        let r = monodromy_group(&pencil(&[0, 1, 5], &[1, 1])).unwrap();
        assert_eq!(r.group_order, Some(6));
        assert_eq!(r.orbits, vec![vec![1, 2, 3]]);
        assert!(r.consistency);
        assert!(r.certified_step < MOVE_RATIO);
        assert_eq!(r.labeling, Labeling::Continuation);
    }

    #[test]
    fn constant_branch_orbits() {
        let r = monodromy_group(&pencil(&[0, 1, 2], &[1, 1])).unwrap();
        assert_eq!(r.orbits, vec![vec![1, 3], vec![2]]);
        assert_eq!(orbit_factor_degrees(&r), vec![1, 2]);
        assert!(r.consistency);
    }

    #[test]
    fn scalar_pair_has_trivial_monodromy() {
        let r = monodromy_group(&pencil(&[0, 0], &[1])).unwrap();
        assert_eq!(r.permutations, vec![vec![1, 2]]);
        assert_eq!(r.orbits, vec![vec![1], vec![2]]);
        assert_eq!(r.labeling, Labeling::Lexicographic);
    }

    #[test]
    fn palindromic_quartic_splits_two_two() {
        let r = monodromy_group(&pencil(&[0, 1, 1, 0], &[1, 2, 1])).unwrap();
        assert_eq!(orbit_factor_degrees(&r), vec![2, 2]);
        assert!(r.consistency);
    }

    #[test]
    fn closure_and_orbits() {
        let gens = vec![vec![2, 1, 3, 4], vec![1, 3, 2, 4]];
        assert_eq!(group_order(&gens, 4), 6);
        assert_eq!(orbits(&gens, 4), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(compose(&[2, 3, 1], &[2, 1, 3]), vec![1, 3, 2]);
    }
}
