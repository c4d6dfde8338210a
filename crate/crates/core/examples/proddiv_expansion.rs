//! Top coefficient of (F_1 + ... + F_r)^{rn} when D_i^{n+1} = 0, printed next
//! to (r!)^n. They agree for curves (n = 1) and part ways from n = 2.

use isodyn::intersect_sym::{expand_sum_power_terms, sum_power_comparison};

fn main() -> isodyn::Result<()> {
    println!("{:>2} {:>2} {:>12} {:>12}", "r", "n", "expansion", "(r!)^n");
    for r in 1..=4 {
        for n in 1..=4 {
            if r * n > 16 {
                continue;
            }
            let c = sum_power_comparison(r, n)?;
            println!("{r:>2} {n:>2} {:>12} {:>12}", c.expansion, c.factorial_power);
        }
    }
    let terms = expand_sum_power_terms(2, 2)?;
    println!("\nsurviving monomials of (F_1 + F_2)^4 with D_i^3 = 0:");
    for t in terms {
        println!("  {} * D^{:?}", t.coefficient, t.exponents);
    }
    Ok(())
}
