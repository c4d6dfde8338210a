//! Fixed points of [m]^l on E^g: the determinant count, the explicit point
//! list and a brute-force grid scan all agree with (m^l - 1)^{2g}.
//!
//! cargo run --example torsion_count -- 3 2

use isodyn::fixpoint::{brute_force_count, count_fixed, enumerate_fixed, DEFAULT_BUDGET};
use isodyn::lattice_av::LatticeEndomorphism;

fn main() -> isodyn::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: i64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let g: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let f = LatticeEndomorphism::multiplication(m, g);

    println!("[{m}] on E^{g}");
    println!("{:>3} {:>14} {:>14} {:>14}", "l", "count", "(m^l-1)^2g", "brute force");
    for l in 1..=5u32 {
        let count = count_fixed(&f, l)?;
        let expected = (num_bigint::BigInt::from(m).pow(l) - 1i32).pow(2 * g as u32);
        let brute = match brute_force_count(&f, l, DEFAULT_BUDGET) {
            Ok(n) => n.to_string(),
            Err(_) => "over budget".into(),
        };
        println!("{l:>3} {count:>14} {expected:>14} {brute:>14}");
    }

    let points = enumerate_fixed(&f, 1)?;
    println!("\nfixed points of [{m}]:");
    for p in points.iter().take(12) {
        let coords: Vec<String> = p.coordinates().iter().map(ToString::to_string).collect();
        println!("  ({})  order {}", coords.join(", "), p.order());
    }
    if points.len() > 12 {
        println!("  ... {} more", points.len() - 12);
    }
    Ok(())
}
