// Obstruction profile of a truncated Hensel lift: all zero exactly when the
// split lifts to a polynomial factorization.

use jacobi_curves::hensel::{obstruction_profile, SubsetSplit};
use jacobi_curves::pencil::JacobiPencil;

fn profile(a: &[i64], b: &[i64], labels: &[usize]) {
    let p = JacobiPencil::from_ints(a, b).expect("valid pencil");
    let s = SubsetSplit { indices: labels.to_vec() };
    let obs = obstruction_profile(&p, &s).expect("distinct diagonal");
    let norms: Vec<String> = obs.iter().map(|o| format!("{:.3e}", o.norm)).collect();
    let terminates = obs.iter().all(|o| o.residual.is_zero());
    println!("{p}, split {labels:?}: [{}] terminates: {terminates}", norms.join(", "));
}

fn main() {
    profile(&[0, 1, 2], &[1, 1], &[2]);
    profile(&[0, 1, 5], &[1, 1], &[2]);
    profile(&[0, 1, 5], &[1, 1], &[1]);
}
