//! Periodic points of complex multiplication by 1 + i on C/Z[i], against the
//! asymptote q^l with q = |1 + i|^2 = 2.

use isodyn::cli::builtin;
use isodyn::fixpoint::growth_table;
use num_traits::ToPrimitive;

fn main() -> isodyn::Result<()> {
    let scenario = builtin("gaussian-cm").expect("builtin");
    let f = &scenario.endomorphism;
    let q = f.polarization_multiplier(&scenario.torus)?.expect("polarized");
    println!("M = {}, deg = {}, q = {q}", f.matrix(), f.degree());

    for row in growth_table(f, &q, 1, 24)? {
        println!(
            "l = {:>2}  #Fix = {:>10}  q^l = {:>10}  ratio = {:.6}",
            row.l,
            row.exact_count,
            row.asymptote,
            row.ratio.to_f64().unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
