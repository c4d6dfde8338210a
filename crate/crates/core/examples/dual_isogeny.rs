//! The complementary isogeny: for nonsingular M the smallest m with
//! m M^{-1} integral gives M' M = M M' = m I and deg M * deg M' = m^{2g}.

use isodyn::exactlinalg::IntegerMatrix;
use isodyn::lattice_av::LatticeEndomorphism;

fn main() -> isodyn::Result<()> {
    let cases = [
        ("1 + i on C/Z[i]", IntegerMatrix::from_rows(&[[1, -1], [1, 1]])),
        ("[3]", IntegerMatrix::scalar(2, 3)),
        ("diag(1, 1, 2, 6)", IntegerMatrix::diagonal(&[1, 1, 2, 6])),
        ("[[2, 1], [0, 3]]", IntegerMatrix::from_rows(&[[2, 1], [0, 3]])),
    ];
    for (label, m) in cases {
        let f = LatticeEndomorphism::linear(m)?;
        let (dual, m) = f.complementary_isogeny()?;
        let n = f.rank();
        let scalar = IntegerMatrix::scalar(n, m.clone());
        println!("{label}");
        println!("  dual = {}, m = {m}", dual.matrix());
        println!(
            "  M'M = mI: {}, MM' = mI: {}",
            dual.matrix() * f.matrix() == scalar,
            f.matrix() * dual.matrix() == scalar
        );
        println!("  deg f * deg f' = {} = m^{n} = {}", f.degree() * dual.degree(), m.pow(n as u32));
    }
    Ok(())
}
