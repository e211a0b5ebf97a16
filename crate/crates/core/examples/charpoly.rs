// Spectral curve of a Jacobi pencil in both outer variables, checked
// against the symbolic determinant.

use jacobi_curves::pencil::JacobiPencil;

fn main() {
    let p = JacobiPencil::from_ints(&[0, 0, 0, 0], &[1, 2, 3]).expect("valid pencil");
    let t_form = p.continuant();
    let w_form = p.charpoly();
    println!("pencil: {p}");
    println!("P(λ, t) = {t_form}");
    println!("χ(λ, w) = {w_form}");
    assert_eq!(w_form, p.charpoly_oracle().expect("oracle"));

    let mixed = JacobiPencil::new(
        vec![jacobi_curves::exactpoly::ratio(1, 2), jacobi_curves::exactpoly::rat(-3)],
        vec![jacobi_curves::exactpoly::ratio(2, 3)],
    )
    .expect("valid pencil");
    println!("rational entries: {} -> {}", mixed, mixed.charpoly());
}
