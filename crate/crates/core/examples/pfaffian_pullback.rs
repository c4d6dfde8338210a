//! Pf(M^T S M) = det(M) Pf(S) for random integer M against the standard
//! symplectic form, and Pf(S)^2 = det(S).

use isodyn::exactlinalg::{det, pfaffian, IntegerMatrix};
use isodyn::intersect_sym::pullback_degree_check;
use isodyn::lattice_av::standard_riemann_form;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> isodyn::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in 1..=4 {
        let s = standard_riemann_form(g);
        let n = 2 * g;
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let m = IntegerMatrix::from_rows(&rows);
        let r = pullback_degree_check(&m, &s)?;
        println!(
            "g = {g}: det M = {:>8}  Pf(M^T S M) = {:>8}  det(M) Pf(S) = {:>8}  holds {}",
            det(&m)?,
            r.pulled_back,
            r.degree_times_original,
            r.holds
        );
    }
    let skew = IntegerMatrix::from_rows(&[[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]);
    let pf = pfaffian(&skew)?;
    println!("\nPf = {pf}, Pf^2 = {}, det = {}", &pf * &pf, det(&skew)?);
    Ok(())
}
