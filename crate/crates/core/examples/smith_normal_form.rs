//! Smith normal form of an integer matrix, with the unimodular transforms.

use relcohom::exact_linalg::{smith_normal_form, IntegerMatrix};

fn main() -> relcohom::Result<()> {
    let a = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let d = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("S =\n{}", d.s);
    println!("invariant factors: {:?}", d.invariant_factors());
    assert_eq!(&(&d.u * &a) * &d.v, d.s);
    println!("U A V = S verified");
    Ok(())
}
