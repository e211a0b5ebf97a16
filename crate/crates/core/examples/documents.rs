// JSON documents: parse a pencil, produce reports, and re-verify them
// exactly from their own contents.

use jacobi_curves::cli::{cmd_charpoly, cmd_decide, cmd_detect, reverify, PencilDocument};
use jacobi_curves::exactpoly::Var;

fn main() {
    let doc = PencilDocument::parse(r#"{"n": 3, "a": ["0", "1/2", "-1"], "b": ["1", "0"]}"#).expect("document");
    for report in [
        cmd_charpoly(&doc, Var::T).expect("charpoly"),
        cmd_detect(&doc, Var::W).expect("detect"),
        cmd_decide(&doc, Var::W).expect("decide"),
    ] {
        println!("{}: re-verified {}", report.command, reverify(&report).expect("reverify"));
    }
    let text = cmd_decide(&doc, Var::W).expect("decide").to_json().expect("json");
    println!("{}", text.lines().take(12).collect::<Vec<_>>().join("\n"));

    let bad = PencilDocument::parse(r#"{"n": 2, "a": ["1"], "b": ["1"]}"#).expect("syntax is fine");
    println!("invalid: {}", bad.to_pencil().unwrap_err());
}
