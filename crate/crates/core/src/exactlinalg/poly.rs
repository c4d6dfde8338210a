use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::Result;

/// Integer polynomial, coefficients in ascending degree. The zero polynomial
/// has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coefficients.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coefficients.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Coefficients as `f64`, ascending. Lossy for huge coefficients.
    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coefficients.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// The product of the distinct irreducible factors, made primitive with a
    /// positive leading coefficient: `p / gcd(p, p')` over the rationals.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let p = to_rational(self);
        let g = rational_gcd(&p, &to_rational(&self.derivative()));
        let (q, _) = rational_divrem(&p, &g);
        primitive(&q)
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - m)` by the division-free Berkowitz
/// recursion over leading principal submatrices.
pub fn charpoly(m: &IntegerMatrix) -> Result<IntegerPolynomial> {
    let n = m.ensure_square()?;
    // Descending coefficients of the characteristic polynomial of the leading
    // k x k block.
    let mut p: Vec<BigInt> = vec![BigInt::one(), -&m[(0, 0)]];
    for k in 1..n {
        let lead: Vec<usize> = (0..k).collect();
        let block = m.select(&lead, &lead);
        let column: Vec<BigInt> = (0..k).map(|i| m[(i, k)].clone()).collect();
        let row: Vec<BigInt> = (0..k).map(|j| m[(k, j)].clone()).collect();

        // First column of the Toeplitz matrix: 1, -a_kk, -R C, -R A C, ...
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-&m[(k, k)]);
        let mut power_c = column;
        for _ in 0..k {
            let rc: BigInt = row.iter().zip(&power_c).map(|(r, c)| r * c).sum();
            toeplitz.push(-rc);
            power_c = (0..k).map(|i| (0..k).map(|j| &block[(i, j)] * &power_c[j]).sum()).collect();
        }

        let mut next = vec![BigInt::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                *slot += &toeplitz[i - j] * pj;
            }
        }
        p = next;
    }
    p.reverse();
    Ok(IntegerPolynomial::new(p))
}

/// `sum_k (-1)^k tr(wedge^k m)`, the alternating trace sum over the exterior
/// powers. Equal to `det(I - m)`.
pub fn exterior_trace_sum(m: &IntegerMatrix) -> Result<BigInt> {
    let n = m.ensure_square()?;
    let chi = charpoly(m)?;
    let c = chi.coefficients();
    // tr(wedge^k m) = e_k(eigenvalues) = (-1)^k c_{n-k}
    let mut total = BigInt::zero();
    for k in 0..=n {
        let c_nk = c.get(n - k).cloned().unwrap_or_default();
        let e_k = if k % 2 == 0 { c_nk } else { -c_nk };
        if k % 2 == 0 {
            total += e_k;
        } else {
            total -= e_k;
        }
    }
    Ok(total)
}

fn to_rational(p: &IntegerPolynomial) -> Vec<BigRational> {
    p.coefficients.iter().cloned().map(BigRational::from).collect()
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rational_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let coef = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &coef * bi;
        }
        q[shift] = coef;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn rational_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = rational_divrem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn primitive(p: &[BigRational]) -> IntegerPolynomial {
    let denom_lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from(denom_lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut ints: Vec<BigInt> = if content.is_zero() { ints } else { ints.iter().map(|c| c / &content).collect() };
    if ints.last().is_some_and(Signed::is_negative) {
        ints.iter_mut().for_each(|c| *c = -&*c);
    }
    IntegerPolynomial::new(ints)
}
