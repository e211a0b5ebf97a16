// Exact absolute irreducibility decision by Hensel lifting from `t = 0`.

use jacobi_curves::hensel::decide;
use jacobi_curves::pencil::JacobiPencil;

fn main() {
    for (a, b) in [
        (vec![0, 1, 5], vec![1, 1]),
        (vec![0, 1, 2], vec![1, 1]),
        (vec![3, -1, 4, 1, -5, 9, 2, 6], vec![1, 2, -1, 3, 1, -2, 1]),
    ] {
        let p = JacobiPencil::from_ints(&a, &b).expect("valid pencil");
        let d = decide(&p).expect("distinct diagonal");
        println!("{p}: {:?}, factor degrees {:?}", d.status, d.factor_degrees());
        for f in &d.factors {
            println!("  labels {:?}: {}", f.indices, f.w_form);
        }
    }
    let repeated = JacobiPencil::from_ints(&[2, 2], &[1]).expect("valid pencil");
    println!("{repeated}: {}", decide(&repeated).unwrap_err());
}
