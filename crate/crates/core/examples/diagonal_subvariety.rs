//! Periodic points of [2] x [2] that lie on the diagonal of E x E, and on a
//! translate of it by a 2-periodic point.

use isodyn::cli::builtin;
use isodyn::fixpoint::{periodic_subvariety_count, periodic_subvariety_points};
use isodyn::lattice_av::TorsionPoint;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn main() -> isodyn::Result<()> {
    let s = builtin("diagonal-subvariety").expect("builtin");
    let sub = s.subvariety.as_ref().expect("subvariety");
    let f = &s.endomorphism;
    for l in [1, 2, 5, 10, 20] {
        let count = periodic_subvariety_count(f, &sub.basis, &sub.translate, sub.period, l)?;
        let ratio = BigRational::new(count.clone(), BigInt::from(4).pow(l));
        println!("l = {l:>2}: {count} points, ratio to 4^l = {:.6}", ratio.to_f64().unwrap_or(f64::NAN));
    }

    // (1/3, 0, 0, 0) has period 2 under doubling: 1/3 -> 2/3 -> 1/3.
    let third = BigRational::new(1.into(), 3.into());
    let zero = BigRational::from(BigInt::from(0));
    let q = TorsionPoint::new(vec![third, zero.clone(), zero.clone(), zero])?;
    let points = periodic_subvariety_points(f, &sub.basis, &q, 2, 1)?;
    println!("\nfixed points of f^2 on the diagonal translated by (1/3, 0, 0, 0):");
    for p in points {
        let coords: Vec<String> = p.coordinates().iter().map(ToString::to_string).collect();
        println!("  ({})", coords.join(", "));
    }
    Ok(())
}
