// Numerical monodromy: loop permutations, group order and orbits.

use jacobi_curves::monodromy::{monodromy_group, orbit_factor_degrees};
use jacobi_curves::pencil::JacobiPencil;

fn main() {
    for (a, b) in [
        (vec![0, 1, 5], vec![1, 1]),
        (vec![0, 1, 2], vec![1, 1]),
        (vec![0, 1, 1, 0], vec![1, 2, 1]),
        (vec![2, -3, 7, 1], vec![1, 4, -2]),
    ] {
        let p = JacobiPencil::from_ints(&a, &b).expect("valid pencil");
        let r = monodromy_group(&p).expect("tracking");
        println!(
            "{p}: {} branch points, group order {:?}, orbits {:?}, degrees {:?}, consistent {}",
            r.branch_points.len(),
            r.group_order,
            r.orbits,
            orbit_factor_degrees(&r),
            r.consistency
        );
    }
}
