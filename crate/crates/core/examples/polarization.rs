//! Pulling back the product polarization: sum/difference on E x E scales it
//! by 2, [m] by m^2, while [1] x [4] on A x E does not scale it at all.

use isodyn::cli::builtin;

fn main() -> isodyn::Result<()> {
    for name in ["silverman-sumdiff", "mult-by-3", "mult-by-2-g2", "gaussian-cm", "unpolarizable-1x4"] {
        let s = builtin(name).expect("builtin");
        let f = &s.endomorphism;
        let q = f.polarization_multiplier(&s.torus)?;
        let shown = q.as_ref().map_or("none".to_string(), ToString::to_string);
        println!("{name:<20} deg = {:<4} q = {shown}", f.degree());
        if q.is_none() {
            let form = s.torus.riemann_form().expect("standard form");
            println!("  M^T S M = {}", &(&f.matrix().transpose() * form) * f.matrix());
        }
    }
    Ok(())
}
