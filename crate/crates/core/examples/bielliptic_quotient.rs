//! [3] on E x E descends to the bielliptic quotient by (x, y) -> (x + 1/2, -y).
//! Fixed points upstairs fall into free orbits of size 2.

use isodyn::cli::builtin;
use isodyn::quotient_dyn::{lift_compatibility, quotient_fixed_lower_bound, validate_action};

fn main() -> isodyn::Result<()> {
    let s = builtin("bielliptic-quotient").expect("builtin");
    let action = s.action.as_ref().expect("action");
    let validation = validate_action(action)?;
    println!("group of order {}: valid {}, free {}", action.order(), validation.is_valid(), validation.free);
    let lift = lift_compatibility(&s.endomorphism, action)?;
    println!("[3] commutes with the action: {}", lift.compatible);

    let q = s.endomorphism.polarization_multiplier(&s.torus)?.expect("polarized");
    for l in 1..=2 {
        let r = quotient_fixed_lower_bound(&s.endomorphism, action, &q, l)?;
        println!(
            "l = {l}: upstairs {}  orbits {}  upstairs/|G| = {}  (q^l-1)^n/|G| = {}  fixed downstairs {}",
            r.upstairs_count,
            r.orbit_count,
            r.bound,
            r.formula_bound,
            r.downstairs_count.map_or("?".into(), |c| c.to_string())
        );
    }
    Ok(())
}
