// Sampling campaigns: the exhaustive degree-2 grid, a degree-3 sample, and
// a codimension probe, with CSV output.

use jacobi_curves::experiments::{run_campaign, run_codim_probe, run_d2_grid, Campaign, Sampler};

fn main() {
    let grid = run_d2_grid().expect("grid");
    println!("d2 grid: {:?}, discrepancies {}", grid.counts, grid.discrepancies);

    let sample = run_campaign(&Campaign::sample("d3", 3, Sampler::Connected, 3, 40, 7)).expect("campaign");
    println!("d3 sample: {:?}, discrepancies {}", sample.counts, sample.discrepancies);
    let csv = sample.to_csv().expect("csv");
    for line in csv.lines().take(4) {
        println!("  {line}");
    }

    let probe = run_codim_probe(4, Sampler::Palindromic, 5, 1).expect("probe");
    println!("palindromic probe: {:?}\n  {}", probe.counts, probe.note);
}
