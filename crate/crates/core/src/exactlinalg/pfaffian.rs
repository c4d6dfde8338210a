use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Dimension up to which the Pfaffian is expanded recursively.
const EXPANSION_LIMIT: usize = 8;

/// Integer Pfaffian of a skew-symmetric matrix of even dimension.
pub fn pfaffian(s: &IntegerMatrix) -> Result<BigInt> {
    let n = s.ensure_square()?;
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if !s.is_skew_symmetric() {
        return Err(Error::NotSkew);
    }
    if n <= EXPANSION_LIMIT {
        let idx: Vec<usize> = (0..n).collect();
        Ok(expand(s, &idx))
    } else {
        Ok(eliminate(s))
    }
}

/// Expansion along the first remaining index.
fn expand(s: &IntegerMatrix, idx: &[usize]) -> BigInt {
    if idx.is_empty() {
        return BigInt::one();
    }
    let first = idx[0];
    let mut total = BigInt::zero();
    for pos in 1..idx.len() {
        let a = &s[(first, idx[pos])];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(p, _)| p + 1 != pos).map(|(_, &i)| i).collect();
        let term = a * expand(s, &rest);
        if pos % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Skew elimination by 2x2 pivot blocks: Pf(A) = p * Pf(Schur complement).
fn eliminate(s: &IntegerMatrix) -> BigInt {
    let n = s.rows();
    let mut a: Vec<Vec<BigRational>> =
        s.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from).collect()).collect();
    let mut result = BigRational::one();
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return BigInt::zero();
        };
        if j != k + 1 {
            a.swap(j, k + 1);
            for row in a.iter_mut() {
                row.swap(j, k + 1);
            }
            result = -result;
        }
        let p = a[k][k + 1].clone();
        for i in k + 2..n {
            for jj in k + 2..n {
                let corr = (&a[i][k] * &a[k + 1][jj] - &a[i][k + 1] * &a[k][jj]) / &p;
                a[i][jj] += corr;
            }
        }
        result *= p;
        k += 2;
    }
    debug_assert!(result.is_integer());
    result.to_integer()
}
