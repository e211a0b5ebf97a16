//! The `jacobi` binary end to end: documents in, reports out, exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use jacobi_curves::cli::{reverify, DecisionStatus, Payload, ReportDocument};

fn jacobi(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jacobi"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn jacobi");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> ReportDocument {
    ReportDocument::parse(std::str::from_utf8(&out.stdout).unwrap()).expect("report document")
}

const SCALAR: &str = r#"{"n": 4, "a": ["0", "0", "0", "0"], "b": ["1", "2", "3"]}"#;

#[test]
fn charpoly_of_the_scalar_quartic() {
    let out = jacobi(&["charpoly", "--form", "w"], SCALAR);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let Payload::Charpoly(c) = &r.result else { panic!("wrong payload") };
    assert_eq!(c.curve.coeffs, vec![
        vec!["0", "0", "0", "0", "1"],
        vec![],
        vec!["0", "0", "-14"],
        vec![],
        vec!["9"],
    ]);
    assert!(reverify(&r).unwrap());
}

#[test]
fn detect_reports_a_cut() {
    let out = jacobi(&["detect"], r#"{"n": 3, "a": ["0", "1", "2"], "b": ["1", "0"]}"#);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let Payload::Detect(d) = &r.result else { panic!("wrong payload") };
    assert_eq!(d.certificates.len(), 1);
    assert!(d.certificates[0].verified);
    assert!(reverify(&r).unwrap());
}

#[test]
fn decide_reports_and_refuses() {
    let out = jacobi(&["decide", "--form", "t"], r#"{"n": 3, "a": ["0", "1", "2"], "b": ["1", "1"]}"#);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let Payload::Decision(d) = &r.result else { panic!("wrong payload") };
    assert_eq!(d.status, DecisionStatus::Reducible);
    assert!(reverify(&r).unwrap());

    let out = jacobi(&["decide"], SCALAR);
    assert_eq!(out.status.code(), Some(3));
    assert!(report(&out).is_unsupported());
}

#[test]
fn monodromy_report() {
    let out = jacobi(&["monodromy"], r#"{"n": 3, "a": ["0", "1", "5"], "b": ["1", "1"]}"#);
    assert_eq!(out.status.code(), Some(0));
    let Payload::Monodromy(m) = report(&out).result else { panic!("wrong payload") };
    assert_eq!(m.report.group_order, Some(6));
    assert_eq!(m.orbit_degrees, vec![3]);
}

#[test]
fn campaign_with_csv_and_seed_override() {
    let dir = std::env::temp_dir().join(format!("jacobi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("d3.csv");
    let input = dir.join("campaign.json");
    std::fs::write(&input, r#"{"kind": "sample", "n": 3, "sampler": "connected", "range": 3, "samples": 12}"#).unwrap();
    let output = dir.join("report.json");
    let out = jacobi(
        &[
            "campaign",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
            "--seed",
            "5",
            "--csv",
            csv.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = ReportDocument::parse(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let Payload::Campaign(c) = &r.result else { panic!("wrong payload") };
    assert_eq!(c.campaign.seed, 5);
    assert_eq!(c.discrepancies, 0);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("index,n,a,b,outcome"));
    assert_eq!(rows.lines().count(), 13);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_documents_exit_with_status_two() {
    let out = jacobi(&["charpoly"], r#"{"n": 2, "a": ["1", "2"], "b": []}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`b`"));

    let out = jacobi(&["charpoly"], "{\n  \"n\": 2,\n  \"a\": [\"1\" \"2\"]\n}");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = jacobi(&["charpoly"], r#"{"n": 1, "a": ["1/0"], "b": []}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_subset_prints_criterion_lines() {
    let out = jacobi(&["selftest", "2", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("criterion  2 [PASS]") && err.contains("criterion  3 [PASS]"), "{err}");
}
