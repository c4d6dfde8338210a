use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Diagonal of `D`: nonnegative, each dividing the next, zeros last.
    pub elementary_divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.elementary_divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Largest elementary divisor (the exponent of the cokernel's torsion when
    /// the matrix is nonsingular). Zero if any divisor is zero.
    pub fn largest_divisor(&self) -> BigInt {
        self.elementary_divisors.last().cloned().unwrap_or_default()
    }

    pub fn nonzero_product(&self) -> BigInt {
        self.elementary_divisors.iter().filter(|d| !d.is_zero()).product()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;

            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = &a[(i, t)] / &a[(t, t)];
                add_row_multiple(&mut a, i, t, &q);
                add_row_multiple(&mut u, i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = &a[(t, j)] / &a[(t, t)];
                add_col_multiple(&mut a, j, t, &q);
                add_col_multiple(&mut v, j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }

            if dirty {
                // A remainder is now smaller than the pivot; move it into place.
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }

            // Row and column are clear. Enforce divisibility into the rest.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[(i, j)] % &a[(t, t)]).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = -BigInt::one();
                    add_row_multiple(&mut a, t, i, &one);
                    add_row_multiple(&mut u, t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }

    let elementary_divisors = (0..rows.min(cols)).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition { u, d: a, v, elementary_divisors }
}

/// row_target -= q * row_source
fn add_row_multiple(m: &mut IntegerMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let delta = q * &m[(source, j)];
        m[(target, j)] -= delta;
    }
}

/// col_target -= q * col_source
fn add_col_multiple(m: &mut IntegerMatrix, target: usize, source: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let delta = q * &m[(i, source)];
        m[(i, target)] -= delta;
    }
}

fn negate_row(m: &mut IntegerMatrix, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -&m[(r, j)];
    }
}

fn smallest_nonzero(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn smallest_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = ((t, t), a[(t, t)].abs());
    let candidates = (t + 1..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in candidates {
        let x = a[(i, j)].abs();
        if !x.is_zero() && x < best.1 {
            best = ((i, j), x);
        }
    }
    best.0
}
