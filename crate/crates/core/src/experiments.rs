//! Reproducible sampling campaigns and exhaustive small grids.
//!
//! Every sample is drawn from its own ChaCha stream (`seed`, stream = sample
//! index), so results do not depend on scheduling and shards can be run in
//! any order. Random hits on reducible curves are recorded as witnesses with
//! an audit trail, never silently dropped.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, gcd_in_lambda, rat};
use crate::hensel::{decide, Decision, Status};
use crate::mechanisms::{apply_all, is_palindromic, MechanismKind, MechanismReport};
use crate::monodromy::monodromy_group;
use crate::pencil::{pairwise_distinct, JacobiPencil};

/// Where sample pencils come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampler {
    /// Connected, pairwise-distinct diagonal.
    Generic,
    /// Connected, diagonal unrestricted.
    Connected,
    /// Connected and invariant under index reversal up to coupling signs.
    Palindromic,
    /// Connected with constant diagonal.
    Scalar,
    /// `n = 3` constant-branch stratum `(a_3 − a_2)b_1² + (a_1 − a_2)b_2² = 0`
    /// with distinct diagonal.
    D3Stratum,
}

impl Sampler {
    pub fn name(self) -> &'static str {
        match self {
            Sampler::Generic => "generic",
            Sampler::Connected => "connected",
            Sampler::Palindromic => "palindromic",
            Sampler::Scalar => "scalar",
            Sampler::D3Stratum => "d3-stratum",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignKind {
    /// Classify `samples` pencils from `sampler`.
    Sample,
    /// Every `(a_1, a_2, b_1) ∈ [−3, 3]³`.
    D2Grid,
    /// `gcd(P_k, P_{k−1}) = 1` for `k = 2..=n`.
    CoprimeSweep,
    /// Points on the `sampler` stratum and one-coordinate perturbations off it.
    CodimProbe,
}

fn default_name() -> String {
    "campaign".into()
}

fn default_range() -> i64 {
    9
}

fn default_samples() -> usize {
    100
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Campaign {
    #[serde(default = "default_name")]
    pub name: String,
    pub kind: CampaignKind,
    #[serde(default)]
    pub n: usize,
    #[serde(default = "Campaign::default_sampler")]
    pub sampler: Sampler,
    /// Integer entries are drawn from `[−range, range]`.
    #[serde(default = "default_range")]
    pub range: i64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Campaign {
    fn default_sampler() -> Sampler {
        Sampler::Generic
    }

    pub fn sample(name: &str, n: usize, sampler: Sampler, range: i64, samples: usize, seed: u64) -> Self {
        Self {
            name: name.into(),
            kind: CampaignKind::Sample,
            n,
            sampler,
            range,
            samples,
            seed,
        }
    }
}

/// Classification of one pencil.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Irreducible,
    ReducibleByMechanism { kinds: Vec<MechanismKind> },
    /// The exact Hensel factorization is finer than the mechanisms explain.
    ReducibleUnexplained,
    Unsupported { reason: String },
    Coprime,
    NotCoprime,
}

impl Outcome {
    /// Key used in campaign counts and CSV rows.
    pub fn label(&self) -> String {
        match self {
            Outcome::Irreducible => "irreducible".into(),
            Outcome::ReducibleByMechanism { kinds } => format!(
                "reducible-by-mechanism({})",
                kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join("+")
            ),
            Outcome::ReducibleUnexplained => "reducible-unexplained".into(),
            Outcome::Unsupported { .. } => "unsupported".into(),
            Outcome::Coprime => "coprime".into(),
            Outcome::NotCoprime => "not-coprime".into(),
        }
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, Outcome::ReducibleByMechanism { .. } | Outcome::ReducibleUnexplained)
    }

    /// Outcomes that are not the expected generic answer.
    fn is_witness(&self) -> bool {
        !matches!(self, Outcome::Irreducible | Outcome::Coprime)
    }
}

/// How a classification was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Exact Hensel decision or verified certificates.
    Exact,
    /// Monodromy orbits only.
    Numeric,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub outcome: Outcome,
    pub evidence: Evidence,
    /// Sorted λ-degrees of the absolutely irreducible factors when known
    /// (Hensel factors or monodromy orbits), else of the mechanism leaves.
    pub factor_degrees: Vec<usize>,
    pub mechanisms: MechanismReport,
    pub decision: Option<Decision>,
    pub orbits: Option<Vec<Vec<usize>>>,
}

/// Decide reducibility exactly when the diagonal is distinct; otherwise use
/// the mechanisms, with monodromy orbits for the absolute factor degrees.
pub fn classify(p: &JacobiPencil) -> Result<Classification> {
    let mechanisms = apply_all(p)?;
    if p.has_distinct_diagonal() {
        let decision = decide(p)?;
        let degrees = decision.factor_degrees();
        let outcome = match decision.status {
            Status::Irreducible if mechanisms.is_reducible() => {
                return Err(Error::Validation(format!(
                    "mechanisms split {p} but the Hensel test finds it irreducible"
                )))
            }
            Status::Irreducible => Outcome::Irreducible,
            Status::Reducible if mechanisms.is_reducible() && mechanisms.leaf_degrees() == degrees => {
                Outcome::ReducibleByMechanism {
                    kinds: mechanisms.kinds(),
                }
            }
            Status::Reducible => Outcome::ReducibleUnexplained,
        };
        return Ok(Classification {
            outcome,
            evidence: Evidence::Exact,
            factor_degrees: degrees,
            mechanisms,
            decision: Some(decision),
            orbits: None,
        });
    }
    let orbits = monodromy_group(p).ok().map(|r| r.orbits);
    let orbit_degrees = orbits.as_ref().map(|o| {
        let mut d: Vec<usize> = o.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    });
    let (outcome, evidence, factor_degrees) = if mechanisms.is_absolutely_reducible() {
        let degrees = orbit_degrees.unwrap_or_else(|| mechanisms.absolute_degrees());
        (
            Outcome::ReducibleByMechanism {
                kinds: mechanisms.kinds(),
            },
            Evidence::Exact,
            degrees,
        )
    } else {
        match orbit_degrees {
            Some(d) if d.len() == 1 => (Outcome::Irreducible, Evidence::Numeric, d),
            Some(d) => (
                Outcome::Unsupported {
                    reason: format!(
                        "repeated diagonal; monodromy finds {} components but no exact factorization is available",
                        d.len()
                    ),
                },
                Evidence::Numeric,
                d,
            ),
            None => (
                Outcome::Unsupported {
                    reason: "repeated diagonal and monodromy unavailable".into(),
                },
                Evidence::None,
                mechanisms.leaf_degrees(),
            ),
        }
    };
    Ok(Classification {
        outcome,
        evidence,
        factor_degrees,
        mechanisms,
        decision: None,
        orbits,
    })
}

/// Membership of a pencil in the strata a reducible hit is checked against.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Strata {
    pub cut: bool,
    pub constant_branch: bool,
    pub palindromic: bool,
    /// Some diagonal value repeats.
    pub coincidence: bool,
}

impl Strata {
    pub fn of(p: &JacobiPencil, mechanisms: &MechanismReport) -> Result<Self> {
        Ok(Self {
            cut: !p.is_connected(),
            constant_branch: mechanisms.kinds().contains(&MechanismKind::ConstantBranch),
            palindromic: p.n() >= 2 && is_palindromic(p, p.full_block())?,
            coincidence: !p.has_distinct_diagonal(),
        })
    }

    pub fn any(&self) -> bool {
        self.cut || self.constant_branch || self.palindromic || self.coincidence
    }
}

/// Audit trail attached to every non-generic outcome.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Audit {
    pub strata: Strata,
    pub certificates: Vec<String>,
    pub mechanism_leaf_degrees: Vec<usize>,
    /// Exact absolutely irreducible factors in `(λ, w)`, when decided.
    pub hensel_factors: Vec<String>,
    pub orbits: Option<Vec<Vec<usize>>>,
}

impl Audit {
    fn of(p: &JacobiPencil, c: &Classification) -> Result<Self> {
        Ok(Self {
            strata: Strata::of(p, &c.mechanisms)?,
            certificates: c
                .mechanisms
                .certificates
                .iter()
                .map(|cert| format!("{} on {}", cert.kind.name(), cert.block))
                .collect(),
            mechanism_leaf_degrees: c.mechanisms.leaf_degrees(),
            hensel_factors: c
                .decision
                .iter()
                .flat_map(|d| d.factors.iter().map(|f| f.w_form.to_string()))
                .collect(),
            orbits: c.orbits.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub n: usize,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub outcome: Outcome,
    pub evidence: Evidence,
    pub factor_degrees: Vec<usize>,
    /// What the governing classification result predicts, when there is one.
    pub expected_reducible: Option<bool>,
    pub discrepancy: bool,
    pub audit: Option<Audit>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CampaignReport {
    pub campaign: Campaign,
    pub counts: BTreeMap<String, usize>,
    pub discrepancies: usize,
    pub records: Vec<SampleRecord>,
    /// Indices (into `records`) of every non-generic outcome.
    pub witnesses: Vec<usize>,
    pub runtime_ms: u64,
    pub note: String,
}

const EVIDENCE_NOTE: &str = "sampling evidence only: the absence of counterexamples at sampled rational points does not prove any codimension bound";

impl CampaignReport {
    fn assemble(campaign: Campaign, records: Vec<SampleRecord>, started: Instant) -> Self {
        let mut counts = BTreeMap::new();
        for r in &records {
            *counts.entry(r.outcome.label()).or_insert(0) += 1;
        }
        Self {
            discrepancies: records.iter().filter(|r| r.discrepancy).count(),
            witnesses: records
                .iter()
                .enumerate()
                .filter(|(_, r)| r.outcome.is_witness())
                .map(|(i, _)| i)
                .collect(),
            counts,
            records,
            campaign,
            runtime_ms: started.elapsed().as_millis() as u64,
            note: EVIDENCE_NOTE.into(),
        }
    }

    pub fn count(&self, label: &str) -> usize {
        self.counts.get(label).copied().unwrap_or(0)
    }

    /// Number of records whose outcome is reducible.
    pub fn reducible(&self) -> usize {
        self.records.iter().filter(|r| r.outcome.is_reducible()).count()
    }

    /// One row per sample, with a header.
    pub fn to_csv(&self) -> Result<String> {
        #[derive(serde::Serialize)]
        struct Row<'a> {
            index: usize,
            n: usize,
            a: String,
            b: String,
            outcome: String,
            evidence: Evidence,
            factor_degrees: String,
            expected_reducible: Option<bool>,
            discrepancy: bool,
            witness: Option<&'a str>,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(Row {
                index: r.index,
                n: r.n,
                a: r.a.join(" "),
                b: r.b.join(" "),
                outcome: r.outcome.label(),
                evidence: r.evidence,
                factor_degrees: r
                    .factor_degrees
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                expected_reducible: r.expected_reducible,
                discrepancy: r.discrepancy,
                witness: r.outcome.is_witness().then_some("witness"),
            })
            .map_err(|e| Error::Validation(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Validation(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Validation(format!("csv: {e}")))
    }
}

fn record(index: usize, p: &JacobiPencil, expected: Option<bool>) -> Result<SampleRecord> {
    let c = classify(p)?;
    let audit = if c.outcome.is_witness() {
        Some(Audit::of(p, &c)?)
    } else {
        None
    };
    Ok(SampleRecord {
        index,
        n: p.n(),
        a: p.a().iter().map(format_rational).collect(),
        b: p.b().iter().map(format_rational).collect(),
        discrepancy: expected.is_some_and(|e| e != c.outcome.is_reducible()),
        outcome: c.outcome,
        evidence: c.evidence,
        factor_degrees: c.factor_degrees,
        expected_reducible: expected,
        audit,
    })
}

/// Independent generator for sample `index`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn nonzero(rng: &mut ChaCha8Rng, range: i64) -> i64 {
    loop {
        let x = rng.gen_range(-range..=range);
        if x != 0 {
            return x;
        }
    }
}

/// Draw one pencil from `sampler`. Stratum samplers check their defining
/// equations exactly before returning.
pub fn sample_pencil(sampler: Sampler, n: usize, range: i64, rng: &mut ChaCha8Rng) -> Result<JacobiPencil> {
    if n == 0 || range < 1 {
        return Err(Error::Validation("need n ≥ 1 and range ≥ 1".into()));
    }
    let couplings = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..n - 1).map(|_| nonzero(rng, range)).collect() };
    let p = match sampler {
        Sampler::Generic => {
            if (2 * range + 1) < n as i64 {
                return Err(Error::Validation(format!(
                    "range {range} is too small for {n} distinct diagonal entries"
                )));
            }
            let mut a: Vec<i64> = Vec::with_capacity(n);
            while a.len() < n {
                let x = rng.gen_range(-range..=range);
                if !a.contains(&x) {
                    a.push(x);
                }
            }
            JacobiPencil::from_ints(&a, &couplings(rng))?
        }
        Sampler::Connected => {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
            JacobiPencil::from_ints(&a, &couplings(rng))?
        }
        Sampler::Palindromic => {
            let mut a = vec![0; n];
            for k in 0..n.div_ceil(2) {
                let x = rng.gen_range(-range..=range);
                a[k] = x;
                a[n - 1 - k] = x;
            }
            let mut b = vec![0; n.saturating_sub(1)];
            for k in 0..n / 2 {
                let x = nonzero(rng, range);
                b[k] = x;
                b[n - 2 - k] = if rng.gen_bool(0.5) { x } else { -x };
            }
            let p = JacobiPencil::from_ints(&a, &b)?;
            if n >= 2 && !is_palindromic(&p, p.full_block())? {
                return Err(Error::Validation(format!("palindromic sampler produced {p}")));
            }
            p
        }
        Sampler::Scalar => {
            let a = vec![rng.gen_range(-range..=range); n];
            JacobiPencil::from_ints(&a, &couplings(rng))?
        }
        Sampler::D3Stratum => {
            if n != 3 {
                return Err(Error::Validation("the d3 stratum sampler needs n = 3".into()));
            }
            // b_2 = b_1·u/v makes b_2² = b_1²·r with r = (a_2 − a_3)/(a_1 − a_2) = (u/v)²
            let b1 = rat(nonzero(rng, range));
            let (u, v) = (rat(nonzero(rng, range)), rat(nonzero(rng, range)));
            let a2 = rat(rng.gen_range(-range..=range));
            let d = rat(nonzero(rng, range));
            let r = (&u / &v) * (&u / &v);
            let a1 = &a2 + &d;
            let a3 = &a2 - &(&r * &d);
            let b2 = &b1 * &(&u / &v);
            let p = JacobiPencil::new(vec![a1, a2, a3], vec![b1, b2])?;
            let (a, c) = (p.a(), p.c());
            let relation = &(&(&a[2] - &a[1]) * &c[0]) + &(&(&a[0] - &a[1]) * &c[1]);
            if !num_traits::Zero::is_zero(&relation) || !p.has_distinct_diagonal() {
                return Err(Error::Validation(format!("d3 sampler left the stratum: {p}")));
            }
            p
        }
    };
    Ok(p)
}

/// Reducibility predicted by a known closed-form criterion, where one applies.
pub fn predicted_reducible(sampler: Sampler, p: &JacobiPencil) -> Option<bool> {
    match sampler {
        Sampler::Palindromic | Sampler::Scalar | Sampler::D3Stratum => Some(p.n() >= 2),
        Sampler::Generic | Sampler::Connected => match p.n() {
            1 => Some(false),
            2 => Some(p.a()[0] == p.a()[1]),
            3 => Some(d3_closed_form(p)),
            _ => None,
        },
    }
}

/// Reducibility of a connected `n = 3` curve in closed form.
pub fn d3_closed_form(p: &JacobiPencil) -> bool {
    let (a, c) = (p.a(), p.c());
    let relation = &(&(&a[2] - &a[1]) * &c[0]) + &(&(&a[0] - &a[1]) * &c[1]);
    num_traits::Zero::is_zero(&relation) || a[0] == a[2]
}

/// Dispatch a campaign document.
pub fn run_campaign(c: &Campaign) -> Result<CampaignReport> {
    let started = Instant::now();
    let records = match c.kind {
        CampaignKind::Sample => (0..c.samples)
            .into_par_iter()
            .map(|i| {
                let p = sample_pencil(c.sampler, c.n, c.range, &mut sample_rng(c.seed, i))?;
                record(i, &p, predicted_reducible(c.sampler, &p))
            })
            .collect::<Result<Vec<_>>>()?,
        CampaignKind::D2Grid => d2_grid_records()?,
        CampaignKind::CoprimeSweep => coprime_records(c)?,
        CampaignKind::CodimProbe => codim_records(c)?,
    };
    Ok(CampaignReport::assemble(c.clone(), records, started))
}

/// Random connected pencils with distinct diagonal entries.
pub fn run_generic(n: usize, samples: usize, range: i64, seed: u64) -> Result<CampaignReport> {
    run_campaign(&Campaign::sample("generic", n, Sampler::Generic, range, samples, seed))
}

/// Full subset-scan decisions on random degree-8 pencils.
pub fn run_degree8_scan(samples: usize, range: i64, seed: u64) -> Result<CampaignReport> {
    run_campaign(&Campaign::sample("degree8-scan", 8, Sampler::Generic, range, samples, seed))
}

/// Exhaustive `n = 2` grid; reducible exactly when `b_1 = 0` or `a_1 = a_2`.
pub fn run_d2_grid() -> Result<CampaignReport> {
    run_campaign(&Campaign {
        name: "d2-grid".into(),
        kind: CampaignKind::D2Grid,
        n: 2,
        sampler: Sampler::Connected,
        range: 3,
        samples: 343,
        seed: 0,
    })
}

fn d2_grid_records() -> Result<Vec<SampleRecord>> {
    let mut points = Vec::new();
    for a1 in -3..=3i64 {
        for a2 in -3..=3i64 {
            for b1 in -3..=3i64 {
                points.push((a1, a2, b1));
            }
        }
    }
    points
        .into_par_iter()
        .enumerate()
        .map(|(i, (a1, a2, b1))| {
            let p = JacobiPencil::from_ints(&[a1, a2], &[b1])?;
            record(i, &p, Some(b1 == 0 || a1 == a2))
        })
        .collect()
}

/// Consecutive continuants of random connected pencils, `n = 2..=n_max`.
pub fn run_coprime_sweep(n_max: usize, samples: usize, seed: u64) -> Result<CampaignReport> {
    run_campaign(&Campaign {
        name: "coprime-sweep".into(),
        kind: CampaignKind::CoprimeSweep,
        n: n_max,
        sampler: Sampler::Connected,
        range: 9,
        samples,
        seed,
    })
}

fn coprime_records(c: &Campaign) -> Result<Vec<SampleRecord>> {
    let jobs: Vec<(usize, usize)> = (2..=c.n).flat_map(|n| (0..c.samples).map(move |i| (n, i))).collect();
    jobs.into_par_iter()
        .enumerate()
        .map(|(index, (n, i))| {
            let stream = (n << 32) | i;
            let p = sample_pencil(Sampler::Connected, n, c.range, &mut sample_rng(c.seed, stream))?;
            let g = gcd_in_lambda(&p.continuant(), &p.extract_block(1, n - 1)?.continuant())?;
            let coprime = g.deg_lambda() == Some(0);
            Ok(SampleRecord {
                index,
                n,
                a: p.a().iter().map(format_rational).collect(),
                b: p.b().iter().map(format_rational).collect(),
                outcome: if coprime { Outcome::Coprime } else { Outcome::NotCoprime },
                evidence: Evidence::Exact,
                factor_degrees: Vec::new(),
                expected_reducible: None,
                discrepancy: !coprime,
                audit: None,
            })
        })
        .collect()
}

/// On-stratum samples (expected reducible) paired with one-coordinate
/// perturbations (expected irreducible).
pub fn run_codim_probe(n: usize, stratum: Sampler, samples: usize, seed: u64) -> Result<CampaignReport> {
    run_campaign(&Campaign {
        name: format!("codim-probe-{}", stratum.name()),
        kind: CampaignKind::CodimProbe,
        n,
        sampler: stratum,
        range: 9,
        samples,
        seed,
    })
}

/// Move the pencil off its stratum. The constant-branch stratum loses its
/// relation by a change of `b_2`; the other strata get diagonal offsets
/// `k·i` with the smallest `k ≥ 1` that makes the diagonal pairwise distinct,
/// so the perturbed point is decided exactly.
pub fn perturb_off_stratum(stratum: Sampler, p: &JacobiPencil) -> Result<JacobiPencil> {
    let mut b = p.b().to_vec();
    if stratum == Sampler::D3Stratum {
        let old = b[1].clone();
        b[1] = &old + &rat(1);
        if &b[1] * &b[1] == &old * &old {
            b[1] = &old + &rat(2);
        }
        return JacobiPencil::new(p.a().to_vec(), b);
    }
    for k in 1i64.. {
        let a: Vec<_> = p.a().iter().zip(1i64..).map(|(x, i)| x + rat(k * i)).collect();
        if pairwise_distinct(&a) {
            return JacobiPencil::new(a, b);
        }
    }
    unreachable!("some offset separates a finite diagonal")
}

fn codim_records(c: &Campaign) -> Result<Vec<SampleRecord>> {
    if !matches!(c.sampler, Sampler::Palindromic | Sampler::Scalar | Sampler::D3Stratum) {
        return Err(Error::Validation(format!(
            "codimension probes need a stratum sampler, got {}",
            c.sampler.name()
        )));
    }
    let pairs = (0..c.samples)
        .into_par_iter()
        .map(|i| {
            let on = sample_pencil(c.sampler, c.n, c.range, &mut sample_rng(c.seed, i))?;
            let off = perturb_off_stratum(c.sampler, &on)?;
            Ok((record(2 * i, &on, Some(true))?, record(2 * i + 1, &off, Some(false))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairs.into_iter().flat_map(|(x, y)| [x, y]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let cut = classify(&JacobiPencil::from_ints(&[0, 1, 2], &[1, 0]).unwrap()).unwrap();
        assert_eq!(cut.outcome, Outcome::ReducibleByMechanism { kinds: vec![MechanismKind::Cut] });
        assert_eq!(cut.factor_degrees, vec![1, 2]);

        let branch = classify(&JacobiPencil::from_ints(&[0, 1, 2], &[1, 1]).unwrap()).unwrap();
        assert_eq!(
            branch.outcome,
            Outcome::ReducibleByMechanism {
                kinds: vec![MechanismKind::ConstantBranch]
            }
        );

        let generic = classify(&JacobiPencil::from_ints(&[0, 1, 5], &[1, 1]).unwrap()).unwrap();
        assert_eq!(generic.outcome, Outcome::Irreducible);
        assert_eq!(generic.evidence, Evidence::Exact);

        let scalar = classify(&JacobiPencil::from_ints(&[0, 0], &[1]).unwrap()).unwrap();
        assert!(scalar.outcome.is_reducible());
        assert_eq!(scalar.factor_degrees, vec![1, 1]);

        let repeated = classify(&JacobiPencil::from_ints(&[1, 1, 2], &[1, 1]).unwrap()).unwrap();
        assert_eq!(repeated.outcome, Outcome::Irreducible);
        assert_eq!(repeated.evidence, Evidence::Numeric);
    }

    #[test]
    fn samplers_respect_their_strata() {
        for i in 0..20 {
            let mut rng = sample_rng(3, i);
            let g = sample_pencil(Sampler::Generic, 5, 9, &mut rng).unwrap();
            assert!(g.is_connected() && g.has_distinct_diagonal());
            let pal = sample_pencil(Sampler::Palindromic, 6, 9, &mut rng).unwrap();
            assert!(pal.is_connected() && is_palindromic(&pal, pal.full_block()).unwrap());
            let s = sample_pencil(Sampler::Scalar, 4, 9, &mut rng).unwrap();
            assert!(s.a().iter().all(|x| *x == s.a()[0]));
            let d3 = sample_pencil(Sampler::D3Stratum, 3, 9, &mut rng).unwrap();
            assert!(d3_closed_form(&d3) && d3.has_distinct_diagonal());
        }
        assert!(sample_pencil(Sampler::Generic, 8, 2, &mut sample_rng(0, 0)).is_err());
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let a = run_generic(4, 12, 9, 42).unwrap();
        let b = run_generic(4, 12, 9, 42).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.count("irreducible"), 12);
        let c = run_generic(4, 12, 9, 43).unwrap();
        assert_ne!(a.records, c.records);
    }

    #[test]
    fn d3_stratum_is_always_reducible() {
        let r = run_campaign(&Campaign::sample("d3", 3, Sampler::D3Stratum, 5, 20, 1)).unwrap();
        assert_eq!(r.reducible(), 20);
        assert_eq!(r.discrepancies, 0);
        assert_eq!(r.witnesses.len(), 20);
        assert!(r.records.iter().all(|x| x.audit.as_ref().is_some_and(|a| a.strata.constant_branch)));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = run_generic(2, 3, 9, 0).unwrap();
        let csv = r.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("index,n,a,b,outcome"));
    }

    #[test]
    fn codim_probe_palindromic_pairs() {
        let r = run_codim_probe(4, Sampler::Palindromic, 4, 5).unwrap();
        assert_eq!(r.records.len(), 8);
        for pair in r.records.chunks(2) {
            assert!(pair[0].outcome.is_reducible());
        }
    }

    #[test]
    fn coprime_sweep_small() {
        let r = run_coprime_sweep(4, 5, 2).unwrap();
        assert_eq!(r.count("coprime"), 15);
        assert_eq!(r.discrepancies, 0);
    }
}
