// Verified factorization certificates from the elementary mechanisms.

use jacobi_curves::mechanisms::apply_all;
use jacobi_curves::pencil::JacobiPencil;

fn show(a: &[i64], b: &[i64]) {
    let p = JacobiPencil::from_ints(a, b).expect("valid pencil");
    let r = apply_all(&p).expect("mechanisms");
    println!("{p}");
    for c in &r.certificates {
        println!("  {} on {} (verified: {})", c.kind.name(), c.block, c.verified);
        for f in &c.factors {
            println!("    {f}");
        }
    }
    println!(
        "  leaves {:?}, absolute degrees {:?}",
        r.leaf_degrees(),
        r.absolute_degrees()
    );
}

fn main() {
    show(&[0, 1, 2], &[1, 0]); // zero coupling
    show(&[1, 0, -1], &[1, 1]); // constant branch λ + 0
    show(&[0, 1, 1, 0], &[1, 2, -1]); // palindrome
    show(&[0, 0, 0, 0], &[1, 2, 3]); // scalar block
    show(&[0, 1, 5], &[1, 1]); // nothing applies
}
