//! Multidegree bookkeeping for divisor classes on a product `X^r` of
//! `n`-dimensional factors, and the pullback-degree identity at the level of
//! Riemann forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{det, pfaffian, IntegerMatrix};

/// Largest total degree `rn` the expansion accepts.
pub const MAX_TOTAL_DEGREE: u32 = 16;

/// `coefficient * D_1^{e_1} ... D_r^{e_r}`. Any exponent above the factor
/// dimension kills the monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeMonomial {
    pub exponents: Vec<u32>,
    pub coefficient: BigInt,
}

/// Expands `(F_1 + ... + F_r)^{rn}` over commuting symbols with
/// `D_i^{n+1} = 0` applied after every multiplication. Returns the surviving
/// monomials.
pub fn expand_sum_power_terms(r: u32, n: u32) -> Result<Vec<MultidegreeMonomial>> {
    if r == 0 || n == 0 {
        return Err(Error::InvalidArgument("r and n must be positive".into()));
    }
    let total = r
        .checked_mul(n)
        .filter(|&t| t <= MAX_TOTAL_DEGREE)
        .ok_or_else(|| Error::SizeCap(format!("r n = {r} x {n} exceeds {MAX_TOTAL_DEGREE}")))?;

    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    terms.insert(vec![0; r as usize], BigInt::one());
    for _ in 0..total {
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (exponents, coefficient) in &terms {
            for i in 0..r as usize {
                if exponents[i] == n {
                    continue;
                }
                let mut e = exponents.clone();
                e[i] += 1;
                *next.entry(e).or_insert_with(BigInt::zero) += coefficient;
            }
        }
        terms = next;
    }
    Ok(terms.into_iter().map(|(exponents, coefficient)| MultidegreeMonomial { exponents, coefficient }).collect())
}

/// Coefficient of `D_1^n ... D_r^n` in `(F_1 + ... + F_r)^{rn}`.
pub fn expand_sum_power(r: u32, n: u32) -> Result<BigInt> {
    let top = vec![n; r as usize];
    Ok(expand_sum_power_terms(r, n)?
        .into_iter()
        .find(|m| m.exponents == top)
        .map(|m| m.coefficient)
        .unwrap_or_default())
}

/// The expansion coefficient next to the literal `(r!)^n` reading of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumPowerComparison {
    pub r: u32,
    pub n: u32,
    pub expansion: BigInt,
    pub factorial_power: BigInt,
}

impl SumPowerComparison {
    pub fn agrees(&self) -> bool {
        self.expansion == self.factorial_power
    }
}

pub fn sum_power_comparison(r: u32, n: u32) -> Result<SumPowerComparison> {
    let expansion = expand_sum_power(r, n)?;
    let r_factorial: BigInt = (1..=r).map(BigInt::from).product();
    Ok(SumPowerComparison { r, n, expansion, factorial_power: r_factorial.pow(n) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackDegreeReport {
    /// `Pf(M^T S M)`
    pub pulled_back: BigInt,
    /// `det(M) Pf(S)`
    pub degree_times_original: BigInt,
    pub holds: bool,
}

/// `Pf(M^T S M) = det(M) Pf(S)`: the top self-intersection of a pulled-back
/// class is the degree times the original.
pub fn pullback_degree_check(m: &IntegerMatrix, s: &IntegerMatrix) -> Result<PullbackDegreeReport> {
    let pf_s = pfaffian(s)?;
    if pf_s.is_zero() {
        return Err(Error::InvalidArgument("form is degenerate".into()));
    }
    if m.rows() != s.rows() || !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} map against {}x{} form", m.rows(), m.cols(), s.rows(), s.cols())));
    }
    let pulled = &(&m.transpose() * s) * m;
    let pulled_back = pfaffian(&pulled)?;
    let degree_times_original = det(m)? * pf_s;
    Ok(PullbackDegreeReport { holds: pulled_back == degree_times_original, pulled_back, degree_times_original })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_av::standard_riemann_form;
    use proptest::prelude::*;

    /// Oracle: the multinomial coefficient (rn)! / (n!)^r.
    fn multinomial(r: u32, n: u32) -> BigInt {
        let fact = |k: u32| -> BigInt { (1..=k).map(BigInt::from).product() };
        fact(r * n) / fact(n).pow(r)
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_sum_power(2, 1).unwrap(), BigInt::from(2));
        assert_eq!(expand_sum_power(3, 1).unwrap(), BigInt::from(6));
        assert_eq!(expand_sum_power(2, 2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn only_the_top_monomial_survives() {
        let terms = expand_sum_power_terms(3, 2).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].exponents, vec![2, 2, 2]);
    }

    #[test]
    fn expansion_matches_multinomial() {
        for r in 1..=4 {
            for n in 1..=4 {
                if r * n > MAX_TOTAL_DEGREE {
                    continue;
                }
                assert_eq!(expand_sum_power(r, n).unwrap(), multinomial(r, n), "r = {r}, n = {n}");
            }
        }
    }

    #[test]
    fn factorial_reading_agrees_only_for_curves() {
        for r in 1..=5 {
            let c = sum_power_comparison(r, 1).unwrap();
            assert!(c.agrees());
        }
        let c = sum_power_comparison(2, 2).unwrap();
        assert_eq!((c.expansion.clone(), c.factorial_power.clone()), (BigInt::from(6), BigInt::from(4)));
        assert!(!c.agrees());
    }

    #[test]
    fn expansion_caps() {
        assert!(matches!(expand_sum_power(5, 4), Err(Error::SizeCap(_))));
        assert!(expand_sum_power(0, 1).is_err());
        assert!(expand_sum_power(4, 4).is_ok());
    }

    #[test]
    fn pullback_examples() {
        let s = standard_riemann_form(1);
        let id = pullback_degree_check(&IntegerMatrix::identity(2), &s).unwrap();
        assert!(id.holds);
        assert_eq!(id.pulled_back, BigInt::one());

        let two = pullback_degree_check(&IntegerMatrix::scalar(2, 2), &s).unwrap();
        assert_eq!(two.pulled_back, BigInt::from(4));
        assert_eq!(two.degree_times_original, BigInt::from(4));

        assert!(pullback_degree_check(&IntegerMatrix::identity(2), &IntegerMatrix::zeros(2, 2)).is_err());
        assert!(pullback_degree_check(&IntegerMatrix::identity(4), &s).is_err());
    }

    proptest! {
        #[test]
        fn pullback_identity_holds(entries in proptest::collection::vec(-5i64..=5, 16)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let m = IntegerMatrix::from_rows(&rows);
            let report = pullback_degree_check(&m, &standard_riemann_form(2)).unwrap();
            prop_assert!(report.holds);
        }
    }
}
