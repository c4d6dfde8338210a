//! Exact fixed-point counts next to the product over simple factors
//! prod (q_i^l - 1)^(g_i r_i). The difference column is printed, not judged.

use isodyn::cli::builtin;
use isodyn::fixpoint::compare_exact;

fn main() -> isodyn::Result<()> {
    for name in ["mult-by-2", "mult-by-3-g2", "silverman-sumdiff", "gaussian-cm"] {
        let s = builtin(name).expect("builtin");
        let report = compare_exact(&s.endomorphism, &s.factors, 6)?;
        println!("{name}: {}", report.formula);
        for row in report.rows {
            let show = |v: Option<num_bigint::BigInt>| v.map_or("degenerate".to_string(), |x| x.to_string());
            println!(
                "  l = {}  exact {:>10}  formula {:>10}  difference {:>8}",
                row.l,
                show(row.exact_count),
                row.formula_value,
                show(row.difference)
            );
        }
    }
    Ok(())
}
