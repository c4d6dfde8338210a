//! Eigenvalue moduli of polarized endomorphisms (|λ|^2 = q) and the
//! Lefschetz number det(I - M^l) against the fixed-point count.

use isodyn::cli::builtin;
use isodyn::exactlinalg::charpoly;
use isodyn::fixpoint::{count_fixed, eigenvalue_modulus_check, lefschetz_number, DEFAULT_TOLERANCE};

fn main() -> isodyn::Result<()> {
    for name in ["gaussian-cm", "silverman-sumdiff", "mult-by-3-g2", "bielliptic-quotient"] {
        let s = builtin(name).expect("builtin");
        let f = &s.endomorphism;
        let q = f.polarization_multiplier(&s.torus)?.expect("polarized");
        let report = eigenvalue_modulus_check(f, &q, DEFAULT_TOLERANCE)?;
        println!("{name}: charpoly {}", charpoly(f.matrix())?);
        for z in &report.roots {
            println!("  λ = {:+.9} {:+.9}i  |λ|^2 = {:.12}", z.re, z.im, z.norm_sqr());
        }
        println!("  q = {q}, max residual {:.2e}, passed {}", report.max_residual, report.passed);
        for l in 1..=4 {
            println!("  L(f^{l}) = {:>8}  #Fix = {:>8}", lefschetz_number(f, l)?, count_fixed(f, l)?);
        }
    }
    Ok(())
}
