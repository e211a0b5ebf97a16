//! Input and report documents for the `jacobi` command line tool, and the
//! commands themselves as library functions.
//!
//! Documents are JSON. Exact quantities (rationals, polynomial coefficients)
//! are strings such as `"-3/7"`; floating values appear only in numerical
//! monodromy data and timings.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::acceptance::CriterionResult;
use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, parse_rational, BiPoly, PolyDoc, UniPoly, Var};
use crate::experiments::{run_campaign, Campaign, CampaignReport};
use crate::hensel::{decide, Decision, Status};
use crate::mechanisms::{apply_all, Certificate, CertificateData, MechanismKind, MechanismReport};
use crate::monodromy::{monodromy_group, orbit_factor_degrees, MonodromyReport};
use crate::pencil::{Block, JacobiPencil};

pub const TOOL: &str = "jacobi";

/// A pencil as read from an input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilDocument {
    pub n: usize,
    pub a: Vec<String>,
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl PencilDocument {
    pub fn from_pencil(p: &JacobiPencil) -> Self {
        Self {
            n: p.n(),
            a: p.a().iter().map(format_rational).collect(),
            b: p.b().iter().map(format_rational).collect(),
            label: None,
        }
    }

    /// Parse JSON text; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "pencil")
    }

    pub fn to_pencil(&self) -> Result<JacobiPencil> {
        if self.n == 0 {
            return Err(Error::Validation("n must be at least 1".into()));
        }
        if self.a.len() != self.n {
            return Err(Error::Validation(format!(
                "field `a` has {} entries, expected n = {}",
                self.a.len(),
                self.n
            )));
        }
        if self.b.len() != self.n - 1 {
            return Err(Error::Validation(format!(
                "field `b` has {} entries, expected n - 1 = {}",
                self.b.len(),
                self.n - 1
            )));
        }
        let field = |name: &str, v: &[String]| {
            v.iter()
                .enumerate()
                .map(|(i, s)| {
                    parse_rational(s).map_err(|e| Error::Validation(format!("{name}[{i}] = {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()
        };
        JacobiPencil::new(field("a", &self.a)?, field("b", &self.b)?)
    }
}

/// Parse a campaign definition.
pub fn parse_campaign(text: &str) -> Result<Campaign> {
    parse_json(text, "campaign")
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        let msg = full.strip_suffix(&format!(" at line {line} column {column}")).unwrap_or(&full);
        Error::Parse(format!("{what} document, line {line} column {column}: {msg}"))
    })
}

/// `t` or `w`.
pub fn parse_form(s: &str) -> Result<Var> {
    match s {
        "t" => Ok(Var::T),
        "w" => Ok(Var::W),
        _ => Err(Error::Validation(format!("form must be `t` or `w`, got {s:?}"))),
    }
}

fn in_form(f: &BiPoly, form: Var) -> Result<BiPoly> {
    match (f.var(), form) {
        (Var::T, Var::W) => f.to_w_form(),
        (Var::W, Var::T) => f.to_t_form(),
        _ => Ok(f.clone()),
    }
}

fn upoly_doc(p: &UniPoly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePayload {
    pub curve: PolyDoc,
}

/// Mechanism-specific data of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateDetails {
    Cut {
        index: usize,
    },
    ConstantBranch {
        index: usize,
        value: String,
    },
    Palindrome {
        symmetric_size: usize,
        antisymmetric_size: usize,
    },
    ScalarBlock {
        diagonal: String,
        /// Coefficients of `q(μ)`, constant term first.
        q: Vec<String>,
        rational_factors: Vec<(Vec<String>, usize)>,
        rational_factorization_complete: bool,
        absolute_degree_pattern: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub kind: MechanismKind,
    pub block: Block,
    pub factors: Vec<PolyDoc>,
    pub verified: bool,
    pub details: CertificateDetails,
}

impl CertificateDoc {
    pub fn new(c: &Certificate, form: Var) -> Result<Self> {
        let details = match &c.data {
            CertificateData::Cut { index } => CertificateDetails::Cut { index: *index },
            CertificateData::ConstantBranch { index, value } => CertificateDetails::ConstantBranch {
                index: *index,
                value: format_rational(value),
            },
            CertificateData::Palindrome {
                symmetric,
                antisymmetric,
            } => CertificateDetails::Palindrome {
                symmetric_size: symmetric.len(),
                antisymmetric_size: antisymmetric.len(),
            },
            CertificateData::ScalarBlock {
                diagonal,
                q,
                rational_factors,
                absolute_degree_pattern,
            } => CertificateDetails::ScalarBlock {
                diagonal: format_rational(diagonal),
                q: upoly_doc(q),
                rational_factors: rational_factors.factors.iter().map(|(f, m)| (upoly_doc(f), *m)).collect(),
                rational_factorization_complete: rational_factors.complete,
                absolute_degree_pattern: absolute_degree_pattern.clone(),
            },
        };
        Ok(Self {
            kind: c.kind,
            block: c.block,
            factors: c.factors.iter().map(|f| in_form(f, form).map(|g| g.to_doc())).collect::<Result<_>>()?,
            verified: c.verified,
            details,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeafDoc {
    pub block: Block,
    pub factor: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectPayload {
    pub curve: PolyDoc,
    pub reducible: bool,
    pub certificates: Vec<CertificateDoc>,
    /// Finest refinement of the certificates; the leaves multiply to `curve`.
    pub leaves: Vec<LeafDoc>,
    pub residual_factors: Vec<PolyDoc>,
    pub verified: bool,
}

impl DetectPayload {
    pub fn new(p: &JacobiPencil, r: &MechanismReport, form: Var) -> Result<Self> {
        let doc = |f: &BiPoly| in_form(f, form).map(|g| g.to_doc());
        Ok(Self {
            curve: doc(&p.charpoly())?,
            reducible: r.is_reducible(),
            certificates: r.certificates.iter().map(|c| CertificateDoc::new(c, form)).collect::<Result<_>>()?,
            leaves: r
                .leaves
                .iter()
                .map(|l| {
                    Ok(LeafDoc {
                        block: l.block,
                        factor: doc(&l.factor)?,
                    })
                })
                .collect::<Result<_>>()?,
            residual_factors: r.residual_factors.iter().map(doc).collect::<Result<_>>()?,
            verified: r.verified,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionStatus {
    Irreducible,
    Reducible,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorDoc {
    /// Diagonal positions (1-based) whose `λ = −a_i` roots this factor carries at `t = 0`.
    pub indices: Vec<usize>,
    pub factor: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionPayload {
    pub status: DecisionStatus,
    pub curve: PolyDoc,
    /// Absolutely irreducible factors; their product is `curve`.
    pub factors: Vec<FactorDoc>,
    /// Subsets (1-based positions) whose lift terminated.
    pub witnesses: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DecisionPayload {
    pub fn new(p: &JacobiPencil, d: &Decision, form: Var) -> Result<Self> {
        Ok(Self {
            status: match d.status {
                Status::Irreducible => DecisionStatus::Irreducible,
                Status::Reducible => DecisionStatus::Reducible,
            },
            curve: in_form(&p.charpoly(), form)?.to_doc(),
            factors: d
                .factors
                .iter()
                .map(|f| {
                    Ok(FactorDoc {
                        indices: f.indices.clone(),
                        factor: match form {
                            Var::W => f.w_form.to_doc(),
                            Var::T => f.t_form.to_doc(),
                        },
                    })
                })
                .collect::<Result<_>>()?,
            witnesses: d
                .witnesses
                .iter()
                .map(|s| s.indices.clone())
                .collect(),
            note: None,
        })
    }

    fn unsupported(p: &JacobiPencil, reason: String, form: Var) -> Result<Self> {
        Ok(Self {
            status: DecisionStatus::Unsupported,
            curve: in_form(&p.charpoly(), form)?.to_doc(),
            factors: Vec::new(),
            witnesses: Vec::new(),
            note: Some(reason),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyPayload {
    pub report: MonodromyReport,
    /// Orbit sizes, sorted; these are the λ-degrees of the components.
    pub orbit_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestPayload {
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

/// Result section of a [`ReportDocument`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Payload {
    Charpoly(CurvePayload),
    Detect(DetectPayload),
    Decision(DecisionPayload),
    Monodromy(MonodromyPayload),
    Campaign(CampaignReport),
    Selftest(SelftestPayload),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Echo of the input document.
    pub input: serde_json::Value,
    pub result: Payload,
    pub timing_ms: f64,
}

impl ReportDocument {
    fn new(command: &str, input: serde_json::Value, result: Payload, started: Instant) -> Self {
        Self {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input,
            result,
            timing_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Validation(format!("serialization: {e}")))
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "report")
    }

    /// Whether the command's outcome is a refusal (exit status 3).
    pub fn is_unsupported(&self) -> bool {
        matches!(&self.result, Payload::Decision(d) if d.status == DecisionStatus::Unsupported)
    }
}

fn echo<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).unwrap_or(serde_json::Value::Null)
}

pub fn cmd_charpoly(doc: &PencilDocument, form: Var) -> Result<ReportDocument> {
    let started = Instant::now();
    let p = doc.to_pencil()?;
    let curve = in_form(&p.continuant(), form)?.to_doc();
    Ok(ReportDocument::new("charpoly", echo(doc), Payload::Charpoly(CurvePayload { curve }), started))
}

pub fn cmd_detect(doc: &PencilDocument, form: Var) -> Result<ReportDocument> {
    let started = Instant::now();
    let p = doc.to_pencil()?;
    let r = apply_all(&p)?;
    let payload = DetectPayload::new(&p, &r, form)?;
    Ok(ReportDocument::new("detect", echo(doc), Payload::Detect(payload), started))
}

/// Repeated diagonals yield a report with status `unsupported` rather than
/// an error, so the refusal is still documented.
pub fn cmd_decide(doc: &PencilDocument, form: Var) -> Result<ReportDocument> {
    let started = Instant::now();
    let p = doc.to_pencil()?;
    let payload = match decide(&p) {
        Ok(d) => DecisionPayload::new(&p, &d, form)?,
        Err(Error::Unsupported(reason)) => DecisionPayload::unsupported(&p, reason, form)?,
        Err(e) => return Err(e),
    };
    Ok(ReportDocument::new("decide", echo(doc), Payload::Decision(payload), started))
}

pub fn cmd_monodromy(doc: &PencilDocument) -> Result<ReportDocument> {
    let started = Instant::now();
    let p = doc.to_pencil()?;
    let report = monodromy_group(&p)?;
    let payload = MonodromyPayload {
        orbit_degrees: orbit_factor_degrees(&report),
        report,
    };
    Ok(ReportDocument::new("monodromy", echo(doc), Payload::Monodromy(payload), started))
}

/// `seed` overrides the seed of the campaign document.
pub fn cmd_campaign(campaign: &Campaign, seed: Option<u64>) -> Result<ReportDocument> {
    let started = Instant::now();
    let mut c = campaign.clone();
    if let Some(s) = seed {
        c.seed = s;
    }
    let report = run_campaign(&c)?;
    Ok(ReportDocument::new("campaign", echo(&c), Payload::Campaign(report), started))
}

pub fn cmd_selftest(ids: &[u8]) -> Result<ReportDocument> {
    let started = Instant::now();
    let criteria = if ids.is_empty() {
        crate::acceptance::run_all()
    } else {
        ids.iter().map(|&i| crate::acceptance::run(i)).collect::<Result<_>>()?
    };
    let payload = SelftestPayload {
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    };
    Ok(ReportDocument::new("selftest", echo(&ids), Payload::Selftest(payload), started))
}

fn product_of(docs: &[&PolyDoc], form: Var) -> Result<BiPoly> {
    let polys: Vec<BiPoly> = docs.iter().map(|d| d.to_poly()).collect::<Result<_>>()?;
    BiPoly::product(&polys, form)
}

/// Check a report against its own input with exact arithmetic: recomputes
/// the curve from the echoed pencil and multiplies the reported factors.
pub fn reverify(report: &ReportDocument) -> Result<bool> {
    let pencil = || -> Result<JacobiPencil> {
        serde_json::from_value::<PencilDocument>(report.input.clone())
            .map_err(|e| Error::Parse(format!("input echo: {e}")))?
            .to_pencil()
    };
    let curve_matches = |doc: &PolyDoc| -> Result<bool> { Ok(doc.to_poly()? == in_form(&pencil()?.charpoly(), doc.form)?) };
    match &report.result {
        Payload::Charpoly(c) => curve_matches(&c.curve),
        Payload::Detect(d) => {
            let leaves: Vec<&PolyDoc> = d.leaves.iter().map(|l| &l.factor).collect();
            let mut ok = curve_matches(&d.curve)? && product_of(&leaves, d.curve.form)? == d.curve.to_poly()?;
            let p = pencil()?;
            for c in &d.certificates {
                let refs: Vec<&PolyDoc> = c.factors.iter().collect();
                let target = in_form(&p.extract(c.block)?.charpoly(), d.curve.form)?;
                ok &= product_of(&refs, d.curve.form)? == target;
            }
            Ok(ok)
        }
        Payload::Decision(d) => {
            let refs: Vec<&PolyDoc> = d.factors.iter().map(|f| &f.factor).collect();
            Ok(curve_matches(&d.curve)?
                && match d.status {
                    DecisionStatus::Unsupported => refs.is_empty(),
                    DecisionStatus::Irreducible => refs.len() == 1,
                    DecisionStatus::Reducible => refs.len() > 1,
                }
                && (refs.is_empty() || product_of(&refs, d.curve.form)? == d.curve.to_poly()?))
        }
        Payload::Monodromy(m) => Ok(m.orbit_degrees.iter().sum::<usize>() == pencil()?.n()),
        Payload::Campaign(c) => Ok(c
            .records
            .iter()
            .all(|r| !(r.outcome.label() == "reducible-unexplained" && r.audit.as_ref().is_none_or(|a| a.hensel_factors.is_empty())))),
        Payload::Selftest(_) => Ok(true),
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) | Error::Parse(_) | Error::Precondition(_) | Error::TagMismatch(..) => 2,
        Error::Unsupported(_) => 3,
        Error::Tracking(_) => 4,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(a: &[&str], b: &[&str]) -> PencilDocument {
        PencilDocument {
            n: a.len(),
            a: a.iter().map(|s| s.to_string()).collect(),
            b: b.iter().map(|s| s.to_string()).collect(),
            label: None,
        }
    }

    #[test]
    fn scalar_quartic_curve() {
        let r = cmd_charpoly(&doc(&["0", "0", "0", "0"], &["1", "2", "3"]), Var::W).unwrap();
        let Payload::Charpoly(c) = &r.result else { panic!() };
        assert_eq!(c.curve.coeffs[0], ["0", "0", "0", "0", "1"]);
        assert_eq!(c.curve.coeffs[2], ["0", "0", "-14"]);
        assert_eq!(c.curve.coeffs[4], ["9"]);
        assert!(reverify(&r).unwrap());
    }

    #[test]
    fn single_entry_is_linear() {
        let r = cmd_charpoly(&doc(&["3/7"], &[]), Var::T).unwrap();
        let Payload::Charpoly(c) = &r.result else { panic!() };
        assert_eq!(c.curve.coeffs, vec![vec!["3/7".to_string(), "1".into()]]);
    }

    #[test]
    fn length_mismatch_is_reported() {
        let e = doc(&["1", "2"], &["1", "1"]).to_pencil().unwrap_err();
        assert!(matches!(&e, Error::Validation(m) if m.contains("`b`")));
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = PencilDocument::parse("{\n  \"n\": 2,\n  \"a\": [\"1\" \"2\"]\n}").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("line 3")), "{e}");
        let e = doc(&["1", "x"], &["1"]).to_pencil().unwrap_err();
        assert!(e.to_string().contains("a[1]"));
    }

    #[test]
    fn repeated_diagonal_decision_is_unsupported() {
        let r = cmd_decide(&doc(&["1", "1"], &["2"]), Var::W).unwrap();
        assert!(r.is_unsupported());
        assert!(reverify(&r).unwrap());
    }

    #[test]
    fn reports_round_trip_and_reverify() {
        let d = doc(&["0", "1", "2"], &["1", "0"]);
        for r in [cmd_detect(&d, Var::W).unwrap(), cmd_decide(&d, Var::T).unwrap()] {
            let back = ReportDocument::parse(&r.to_json().unwrap()).unwrap();
            assert_eq!(back.result, r.result);
            assert!(reverify(&back).unwrap());
        }
    }

    #[test]
    fn tampered_factor_fails_reverification() {
        let mut r = cmd_decide(&doc(&["0", "1", "2"], &["1", "0"]), Var::W).unwrap();
        let Payload::Decision(d) = &mut r.result else { panic!() };
        d.factors[0].factor.coeffs[0][0] = "5".into();
        assert!(!reverify(&r).unwrap());
    }
}
