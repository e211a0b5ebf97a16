// Degree-8 Hensel scan over random connected pencils with distinct
// diagonal. Pass a sample count as the first argument (default 20).

use jacobi_curves::experiments::run_degree8_scan;

fn main() {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let r = run_degree8_scan(samples, 9, 1).expect("scan");
    println!("{samples} pencils: {:?}, witnesses {:?}", r.counts, r.witnesses);
}
