//! Smith normal form U A V = D and what it says about fixed points:
//! ker(M - I) on the torus is a product of cyclic groups Z/d_i.

use isodyn::exactlinalg::{det, smith_normal_form, IntegerMatrix};

fn main() -> isodyn::Result<()> {
    let a = IntegerMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A = {a}");
    println!("U = {}\nV = {}\nD = {}", snf.u, snf.v, snf.d);
    println!("U A V = D: {}", &(&snf.u * &a) * &snf.v == snf.d);
    println!(
        "divisors {:?}, product {} = |det A| = {}",
        snf.elementary_divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        snf.nonzero_product(),
        det(&a)?.magnitude()
    );

    let m = IntegerMatrix::from_rows(&[[1, -1], [1, 1]]).pow(4)?.minus_identity()?;
    let snf = smith_normal_form(&m);
    let groups: Vec<String> = snf.elementary_divisors.iter().map(|d| format!("Z/{d}")).collect();
    println!("\nfixed points of (1 + i)^4 form {}", groups.join(" x "));
    Ok(())
}
