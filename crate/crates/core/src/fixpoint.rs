//! Periodic points of lattice endomorphisms.
//!
//! Fixed points of `f^l` are the solutions of `(M^l - I) x ≡ -t_l` on the
//! torus, where `t_l` is the translation accumulated by the iterate. When
//! `M^l - I` is nonsingular each solution is simple and there are exactly
//! `|det(M^l - I)|` of them, whatever the translation. That determinant is
//! the ground truth here; enumeration (via Smith form) and an exhaustive grid
//! scan are independent routes to the same number.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{charpoly, det, exterior_trace_sum, smith_normal_form, IntegerMatrix};
use crate::lattice_av::{LatticeEndomorphism, SimpleFactorSpec, TorsionPoint};

/// Default grid budget for [`brute_force_count`].
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Default cap on the number of points [`enumerate_fixed`] will materialize.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// Default tolerance of [`eigenvalue_modulus_check`].
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn check_iterate(l: u32) -> Result<()> {
    if l == 0 {
        Err(Error::InvalidArgument("iterate must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// `(M^l - I, t_l)` for the `l`-th iterate.
fn fixed_point_system(f: &LatticeEndomorphism, l: u32) -> Result<(IntegerMatrix, Vec<BigRational>)> {
    check_iterate(l)?;
    let fl = f.power(l)?;
    Ok((fl.matrix().minus_identity()?, fl.translation().to_vec()))
}

/// Number of points with `f^l(P) = P`, i.e. `|det(M^l - I)|`.
pub fn count_fixed(f: &LatticeEndomorphism, l: u32) -> Result<BigInt> {
    let (a, _) = fixed_point_system(f, l)?;
    let d = det(&a)?;
    if d.is_zero() {
        return Err(Error::Degenerate { iterate: l });
    }
    Ok(d.abs())
}

/// All solutions of `A x ≡ b (mod Z^n)` for nonsingular `A`, sorted.
///
/// With `U A V = D`, substitute `x = V y`; the system decouples into
/// `d_i y_i ≡ (U b)_i`, whose solutions are `y_i = ((U b)_i + k) / d_i` for
/// `k = 0..d_i`.
pub fn solve_congruence(a: &IntegerMatrix, b: &[BigRational], cap: u64) -> Result<Vec<TorsionPoint>> {
    let n = a.ensure_square()?;
    if b.len() != n {
        return Err(Error::Dimension(format!("right-hand side of length {} for rank {n}", b.len())));
    }
    let snf = smith_normal_form(a);
    if snf.rank() < n {
        return Err(Error::Singular);
    }
    let total: BigInt = snf.nonzero_product();
    if total > BigInt::from(cap) {
        return Err(Error::BudgetExceeded { required: total.to_string(), budget: cap });
    }
    // With V y = x, the system splits into d_i y_i ≡ c_i, so the solutions
    // are y_i = (c_i + k_i) / d_i for 0 <= k_i < d_i. All of them share the
    // denominator N = lcm(d_i den(c_i)); walk the numerators N x mod N.
    let c = snf.u.mul_rational_vec(b)?;
    let divisors = &snf.elementary_divisors;
    let bounds: Vec<u64> = divisors.iter().map(|d| d.to_u64().expect("bounded by cap")).collect();
    let modulus_big = divisors.iter().zip(&c).fold(BigInt::one(), |acc, (d, ci)| acc.lcm(&(d * ci.denom())));
    let modulus = match modulus_big.to_u64().filter(|&m| m < 1 << 62) {
        Some(m) => m,
        None => return Err(Error::SizeCap(format!("common denominator {modulus_big} of the solutions"))),
    };
    let reduce = |x: BigRational| -> Result<u64> {
        let scaled = x * BigRational::from(modulus_big.clone());
        debug_assert!(scaled.is_integer());
        Ok(scaled.to_integer().mod_floor(&modulus_big).to_u64().expect("reduced"))
    };
    let base: Vec<BigRational> = c.iter().zip(divisors).map(|(ci, d)| ci / BigRational::from(d.clone())).collect();
    let mut sums = snf.v.mul_rational_vec(&base)?.into_iter().map(reduce).collect::<Result<Vec<u64>>>()?;
    let steps: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let scale = &modulus_big / &divisors[j];
            (0..n).map(|i| (&snf.v[(i, j)] * &scale).mod_floor(&modulus_big).to_u64().expect("reduced")).collect()
        })
        .collect();

    let mut numerators = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut k = vec![0u64; n];
    'walk: loop {
        numerators.push(sums.clone());
        // Advancing k_j adds column j of the step table; a full wrap adds
        // d_j times it, which is 0 mod N.
        for j in 0..n {
            for (s, &c) in sums.iter_mut().zip(&steps[j]) {
                *s = (*s + c) % modulus;
            }
            k[j] += 1;
            if k[j] < bounds[j] {
                continue 'walk;
            }
            k[j] = 0;
        }
        break;
    }
    // A shared denominator makes numerator order the coordinate order.
    numerators.sort_unstable();
    let points = numerators
        .into_iter()
        .map(|num| {
            let coords = num.into_iter().map(|x| BigRational::new(BigInt::from(x), modulus_big.clone())).collect();
            TorsionPoint::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(BigInt::from(points.len()), total);
    Ok(points)
}

/// The fixed points of `f^l`, as canonical representatives.
pub fn enumerate_fixed(f: &LatticeEndomorphism, l: u32) -> Result<Vec<TorsionPoint>> {
    enumerate_fixed_with_cap(f, l, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_fixed_with_cap(f: &LatticeEndomorphism, l: u32, cap: u64) -> Result<Vec<TorsionPoint>> {
    let (a, t) = fixed_point_system(f, l)?;
    let rhs: Vec<BigRational> = t.iter().map(|x| -x).collect();
    solve_congruence(&a, &rhs, cap).map_err(|e| match e {
        Error::Singular => Error::Degenerate { iterate: l },
        other => other,
    })
}

/// Exhaustive scan of the grid `(1/N) Z^n / Z^n`, counting points with
/// `(M^l - I) x + t_l ∈ Z^n`.
///
/// `N = D e` where `D` is the largest elementary divisor of `M^l - I` (the
/// exponent of its kernel) and `e` the denominator of `t_l`; every solution
/// lies on this grid. Refuses outright when `N^n` exceeds `budget`.
pub fn brute_force_count(f: &LatticeEndomorphism, l: u32, budget: u64) -> Result<BigInt> {
    let (a, t) = fixed_point_system(f, l)?;
    let n = a.rows();
    let snf = smith_normal_form(&a);
    if snf.rank() < n {
        return Err(Error::Degenerate { iterate: l });
    }
    let exponent = snf.largest_divisor();
    let denominator = t.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let modulus = &exponent * &denominator;
    let grid = modulus.pow(n as u32);
    if grid > BigInt::from(budget) {
        return Err(Error::BudgetExceeded { required: grid.to_string(), budget });
    }
    let modulus_big = modulus.clone();
    let modulus = modulus.to_u64().expect("grid fits the budget");

    // Work modulo N: y = N x is an integer vector, and the condition becomes
    // A y + N t ≡ 0 (mod N).
    let reduce = |x: &BigInt| -> u64 { x.mod_floor(&modulus_big).to_u64().expect("reduced") };
    let columns: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| reduce(&a[(i, j)])).collect()).collect();
    let mut sums: Vec<u64> =
        t.iter().map(|x| reduce(&(x * BigRational::from(modulus_big.clone())).to_integer())).collect();

    let mut count = 0u64;
    let mut digits = vec![0u64; n];
    'scan: loop {
        if sums.iter().all(|&s| s == 0) {
            count += 1;
        }
        // Stepping y_j by one (with or without wrap-around) adds column j mod N.
        for j in 0..n {
            for (s, &c) in sums.iter_mut().zip(&columns[j]) {
                *s = (*s + c) % modulus;
            }
            digits[j] += 1;
            if digits[j] < modulus {
                continue 'scan;
            }
            digits[j] = 0;
        }
        break;
    }
    Ok(BigInt::from(count))
}

/// One line of a growth table: the count against `q^{dl}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub l: u32,
    pub exact_count: BigInt,
    pub asymptote: BigInt,
    pub ratio: BigRational,
}

impl GrowthRow {
    pub fn new(l: u32, exact_count: BigInt, q: &BigInt, dimension: u32) -> Self {
        let asymptote = q.pow(dimension * l);
        let ratio = BigRational::new(exact_count.clone(), asymptote.clone());
        Self { l, exact_count, asymptote, ratio }
    }

    /// `|ratio - 1|` as an exact rational.
    pub fn deviation(&self) -> BigRational {
        (&self.ratio - BigRational::one()).abs()
    }
}

/// Fixed-point counts of `f^l` for `l = 1..=l_max` against `q^{gl}`.
pub fn growth_table(f: &LatticeEndomorphism, q: &BigInt, g: u32, l_max: u32) -> Result<Vec<GrowthRow>> {
    if *q <= BigInt::one() {
        return Err(Error::InvalidArgument("multiplier q must exceed 1".into()));
    }
    check_iterate(l_max)?;
    (1..=l_max).map(|l| Ok(GrowthRow::new(l, count_fixed(f, l)?, q, g))).collect()
}

/// `∏_i (q_i^l - 1)^{g_i r_i}`: each of the `r_i` copies of a simple factor
/// of dimension `g_i` contributes `(q_i^l - 1)^{g_i}`.
pub fn factor_product_formula(factors: &[SimpleFactorSpec], l: u32) -> BigInt {
    factors
        .iter()
        .map(|fac| {
            let base = fac.multiplier().pow(l) - BigInt::one();
            base.pow(fac.dimension() * fac.multiplicity())
        })
        .product()
}

pub const FACTOR_FORMULA_LABEL: &str = "prod_i (q_i^l - 1)^(g_i r_i), additive constant omitted";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub l: u32,
    /// `None` when `M^l - I` is singular.
    pub exact_count: Option<BigInt>,
    pub formula_value: BigInt,
    pub difference: Option<BigInt>,
}

/// Exact counts next to the simple-factor product formula. Records the
/// residual; never asserts agreement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub formula: String,
    pub rows: Vec<ComparisonRow>,
}

pub fn compare_exact(f: &LatticeEndomorphism, factors: &[SimpleFactorSpec], l_max: u32) -> Result<ComparisonReport> {
    check_iterate(l_max)?;
    let rows = (1..=l_max)
        .map(|l| {
            let formula_value = factor_product_formula(factors, l);
            let exact_count = match count_fixed(f, l) {
                Ok(c) => Some(c),
                Err(Error::Degenerate { .. }) => None,
                Err(e) => return Err(e),
            };
            let difference = exact_count.as_ref().map(|c| c - &formula_value);
            Ok(ComparisonRow { l, exact_count, formula_value, difference })
        })
        .collect::<Result<_>>()?;
    Ok(ComparisonReport { formula: FACTOR_FORMULA_LABEL.to_string(), rows })
}

/// Signed Lefschetz number `Σ (-1)^k tr(∧^k M^l) = det(I - M^l)`.
pub fn lefschetz_number(f: &LatticeEndomorphism, l: u32) -> Result<BigInt> {
    check_iterate(l)?;
    exterior_trace_sum(&f.matrix().pow(l)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueReport {
    pub multiplier: BigInt,
    /// Distinct roots of the characteristic polynomial of `M`.
    pub roots: Vec<Complex64>,
    /// `max | |λ|^2 - q |` over the roots.
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks that every eigenvalue of `M` has `|λ|^2 = q`.
///
/// Repeated roots are removed exactly first (squarefree part over Q) so the
/// numerical root finder only ever sees simple roots.
pub fn eigenvalue_modulus_check(f: &LatticeEndomorphism, q: &BigInt, tolerance: f64) -> Result<EigenvalueReport> {
    let chi = charpoly(f.matrix())?;
    let roots = polynomial_roots(&chi.squarefree_part().to_f64())?;
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let max_residual = roots.iter().map(|z| (z.norm_sqr() - qf).abs()).fold(0.0, f64::max);
    Ok(EigenvalueReport { multiplier: q.clone(), roots, max_residual, tolerance, passed: max_residual <= tolerance })
}

/// Complex roots of a polynomial with simple roots (ascending coefficients),
/// by Aberth iteration followed by Newton polishing.
pub fn polynomial_roots(coefficients: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coefficients.len().saturating_sub(1);
    if degree == 0 || coefficients.iter().any(|c| !c.is_finite()) {
        return Err(Error::RootFinding("need a finite polynomial of positive degree".into()));
    }
    let lead = coefficients[degree];
    let monic: Vec<Complex64> = coefficients.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    if degree == 1 {
        return Ok(vec![-monic[0]]);
    }
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };

    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / degree as f64))
        .collect();

    let mut converged = false;
    for _ in 0..1000 {
        let mut biggest_step: f64 = 0.0;
        for i in 0..degree {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            biggest_step = biggest_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if biggest_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged || z.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::RootFinding(format!("Aberth iteration stalled at degree {degree}")));
    }
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*root);
            if dp.norm() == 0.0 {
                break;
            }
            *root -= p / dp;
        }
    }
    Ok(z)
}

/// Points of `Y = V + Q` fixed by `f^{ml}`, where `V` is the sub-torus
/// spanned by `basis` and `Q` is `m`-periodic.
///
/// Writing `P = Q + B y`, periodicity of `Q` turns `f^m` on `Y` into the
/// linear map `y -> M' y` with `M^m B = B M'`, so the count is
/// `|det(M'^l - I)|`.
pub fn periodic_subvariety_count(
    f: &LatticeEndomorphism,
    basis: &IntegerMatrix,
    translate: &TorsionPoint,
    period: u32,
    l: u32,
) -> Result<BigInt> {
    let restricted = restrict_to_periodic_translate(f, basis, translate, period)?;
    count_fixed(&restricted, l)
}

/// The points counted by [`periodic_subvariety_count`], in ambient coordinates.
pub fn periodic_subvariety_points(
    f: &LatticeEndomorphism,
    basis: &IntegerMatrix,
    translate: &TorsionPoint,
    period: u32,
    l: u32,
) -> Result<Vec<TorsionPoint>> {
    let restricted = restrict_to_periodic_translate(f, basis, translate, period)?;
    let mut points: Vec<TorsionPoint> = enumerate_fixed(&restricted, l)?
        .iter()
        .map(|y| {
            let offset = basis.mul_rational_vec(y.coordinates())?;
            let p: Vec<BigRational> = offset.iter().zip(translate.coordinates()).map(|(a, b)| a + b).collect();
            Ok(TorsionPoint::reduce(&p))
        })
        .collect::<Result<_>>()?;
    points.sort();
    Ok(points)
}

/// `f^m` recentered at `Q` and restricted to the sub-torus.
fn restrict_to_periodic_translate(
    f: &LatticeEndomorphism,
    basis: &IntegerMatrix,
    translate: &TorsionPoint,
    period: u32,
) -> Result<LatticeEndomorphism> {
    check_iterate(period)?;
    if translate.rank() != f.rank() {
        return Err(Error::Dimension(format!(
            "translate of rank {} for endomorphism of rank {}",
            translate.rank(),
            f.rank()
        )));
    }
    let fm = f.power(period)?;
    if fm.apply(translate.coordinates())? != *translate {
        return Err(Error::NotPeriodic { period });
    }
    LatticeEndomorphism::linear(fm.matrix().clone())?.restrict_to_sublattice(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_av::ComplexTorus;
    use std::collections::BTreeSet;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gaussian() -> LatticeEndomorphism {
        LatticeEndomorphism::linear(IntegerMatrix::from_rows(&[[1, -1], [1, 1]])).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn count_examples() {
        for (m, g, l) in [(2i64, 1usize, 3u32), (3, 2, 2), (4, 1, 1)] {
            let expected = (big(m).pow(l) - 1i32).pow(2 * g as u32);
            assert_eq!(count_fixed(&LatticeEndomorphism::multiplication(m, g), l).unwrap(), expected);
        }
        // |(1+i)^2 - 1|^2 = |2i - 1|^2 = 5
        assert_eq!(count_fixed(&gaussian(), 2).unwrap(), big(5));
        let id = LatticeEndomorphism::identity(2).unwrap();
        assert_eq!(count_fixed(&id, 1), Err(Error::Degenerate { iterate: 1 }));
        assert!(count_fixed(&gaussian(), 0).is_err());
    }

    #[test]
    fn gaussian_square_scan() {
        // Oracle: scan (1/5)Z^2 / Z^2 for (M^2 - I) x ∈ Z^2 directly.
        let a = gaussian().power(2).unwrap().matrix().minus_identity().unwrap();
        let mut hits = 0;
        for i in 0..5 {
            for j in 0..5 {
                let x = [r(i, 5), r(j, 5)];
                if a.mul_rational_vec(&x).unwrap().iter().all(BigRational::is_integer) {
                    hits += 1;
                }
            }
        }
        assert_eq!(hits, 5);
        assert_eq!(brute_force_count(&gaussian(), 2, DEFAULT_BUDGET).unwrap(), big(5));
    }

    #[test]
    fn enumerate_examples() {
        let two = LatticeEndomorphism::multiplication(2, 1);
        assert_eq!(enumerate_fixed(&two, 1).unwrap(), vec![TorsionPoint::origin(2)]);

        let three = LatticeEndomorphism::multiplication(3, 1);
        let pts: BTreeSet<TorsionPoint> = enumerate_fixed(&three, 1).unwrap().into_iter().collect();
        let expected: BTreeSet<TorsionPoint> =
            (0..2).flat_map(|a| (0..2).map(move |b| TorsionPoint::reduce(&[r(a, 2), r(b, 2)]))).collect();
        assert_eq!(pts, expected);

        // (M - I) x = -t with M = 2I, t = (1/2, 0): x = (-1/2, 0) ≡ (1/2, 0).
        let shifted = LatticeEndomorphism::new(IntegerMatrix::scalar(2, 2), vec![r(1, 2), r(0, 1)]).unwrap();
        assert_eq!(enumerate_fixed(&shifted, 1).unwrap(), vec![TorsionPoint::reduce(&[r(1, 2), r(0, 1)])]);

        let id = LatticeEndomorphism::identity(2).unwrap();
        assert_eq!(enumerate_fixed(&id, 1), Err(Error::Degenerate { iterate: 1 }));
    }

    #[test]
    fn enumerated_points_are_fixed_and_distinct() {
        let f = LatticeEndomorphism::new(
            IntegerMatrix::from_rows(&[[2, 1, 0, 0], [1, 1, 1, 0], [0, 1, 3, 1], [1, 0, 0, 2]]),
            vec![r(1, 2), r(0, 1), r(1, 2), r(0, 1)],
        )
        .unwrap();
        for l in 1..=2 {
            let pts = enumerate_fixed(&f, l).unwrap();
            let fl = f.power(l).unwrap();
            for p in &pts {
                assert_eq!(&fl.apply(p.coordinates()).unwrap(), p);
            }
            let distinct: BTreeSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), pts.len());
            assert_eq!(BigInt::from(pts.len()), count_fixed(&f, l).unwrap());
            match brute_force_count(&f, l, DEFAULT_BUDGET) {
                Ok(c) => assert_eq!(c, count_fixed(&f, l).unwrap()),
                Err(e) => assert!(matches!(e, Error::BudgetExceeded { .. }) && l > 1),
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_count(&LatticeEndomorphism::multiplication(2, 1), 2, DEFAULT_BUDGET).unwrap(), big(9));
        assert_eq!(brute_force_count(&gaussian(), 1, DEFAULT_BUDGET).unwrap(), big(1));
        let err = brute_force_count(&LatticeEndomorphism::multiplication(3, 2), 3, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(err.is_refusal());
    }

    #[test]
    fn brute_force_handles_translations_off_the_kernel_grid() {
        // M - I = I, so D = 1, but the lone fixed point is (2/3, 0).
        let f = LatticeEndomorphism::new(IntegerMatrix::scalar(2, 2), vec![r(1, 3), r(0, 1)]).unwrap();
        assert_eq!(brute_force_count(&f, 1, DEFAULT_BUDGET).unwrap(), big(1));
        assert_eq!(enumerate_fixed(&f, 1).unwrap(), vec![TorsionPoint::reduce(&[r(2, 3), r(0, 1)])]);
    }

    #[test]
    fn count_is_translation_invariant() {
        let m = IntegerMatrix::from_rows(&[[1, -1], [1, 1]]);
        let bare = LatticeEndomorphism::linear(m.clone()).unwrap();
        let moved = LatticeEndomorphism::new(m, vec![r(1, 7), r(3, 4)]).unwrap();
        for l in 1..=6 {
            assert_eq!(count_fixed(&bare, l).unwrap(), count_fixed(&moved, l).unwrap());
            assert_eq!(BigInt::from(enumerate_fixed(&moved, l).unwrap().len()), count_fixed(&bare, l).unwrap());
        }
    }

    #[test]
    fn growth_examples() {
        let two = LatticeEndomorphism::multiplication(2, 1);
        let rows = growth_table(&two, &big(4), 1, 6).unwrap();
        for row in &rows {
            // (1 - 2^{-l})^2
            let closed = (BigRational::one() - BigRational::new(big(1), big(2).pow(row.l))).pow(2);
            assert_eq!(row.ratio, closed);
        }
        assert_eq!(rows[1].ratio, r(9, 16));
        assert_eq!(rows[0].asymptote, big(4));

        let rows = growth_table(&gaussian(), &big(2), 1, 3).unwrap();
        assert_eq!(rows[0].ratio, r(1, 2));
        assert_eq!(rows[0].asymptote, big(2));

        assert!(growth_table(&two, &big(1), 1, 3).is_err());
        let id = LatticeEndomorphism::identity(2).unwrap();
        assert_eq!(growth_table(&id, &big(4), 1, 2), Err(Error::Degenerate { iterate: 1 }));
    }

    #[test]
    fn factor_formula_examples() {
        let single = |g, q| SimpleFactorSpec::new(g, q, 1).unwrap();
        assert_eq!(factor_product_formula(&[single(1, 2)], 3), big(7));
        assert_eq!(factor_product_formula(&[single(2, 3)], 1), big(4));
        // Two copies of an elliptic factor with q = 2 and one surface with q = 3.
        let factors = [SimpleFactorSpec::new(1, 2, 2).unwrap(), single(2, 3)];
        assert_eq!(factor_product_formula(&factors, 2), big(3 * 3 * 64));
        assert!(SimpleFactorSpec::new(0, 2, 1).is_err());
        assert!(SimpleFactorSpec::new(1, 1, 1).is_err());
        assert!(SimpleFactorSpec::new(1, 2, 0).is_err());
    }

    #[test]
    fn comparison_examples() {
        let two = LatticeEndomorphism::multiplication(2, 1);
        let factors = [SimpleFactorSpec::new(1, 4, 1).unwrap()];
        let report = compare_exact(&two, &factors, 2).unwrap();
        let row = |l: usize| &report.rows[l - 1];
        assert_eq!(row(1).exact_count, Some(big(1)));
        assert_eq!(row(1).formula_value, big(3));
        assert_eq!(row(1).difference, Some(big(-2)));
        assert_eq!(row(2).exact_count, Some(big(9)));
        assert_eq!(row(2).formula_value, big(15));
        assert_eq!(row(2).difference, Some(big(-6)));

        let g = compare_exact(&gaussian(), &[SimpleFactorSpec::new(1, 2, 1).unwrap()], 1).unwrap();
        assert_eq!(g.rows[0].difference, Some(big(0)));

        // Degenerate rows are flagged, not fatal.
        let id = LatticeEndomorphism::identity(2).unwrap();
        let report = compare_exact(&id, &factors, 2).unwrap();
        assert!(report.rows.iter().all(|r| r.exact_count.is_none() && r.difference.is_none()));
    }

    #[test]
    fn lefschetz_examples() {
        assert_eq!(lefschetz_number(&LatticeEndomorphism::multiplication(2, 1), 1).unwrap(), big(1));
        assert_eq!(lefschetz_number(&LatticeEndomorphism::multiplication(3, 1), 1).unwrap(), big(4));
        assert_eq!(lefschetz_number(&LatticeEndomorphism::multiplication(0, 1), 1).unwrap(), big(1));
        for l in 1..=5 {
            assert_eq!(lefschetz_number(&gaussian(), l).unwrap().abs(), count_fixed(&gaussian(), l).unwrap());
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let e = ComplexTorus::standard(1).unwrap();
        let ee = ComplexTorus::standard(2).unwrap();
        let sum_diff = LatticeEndomorphism::linear(IntegerMatrix::from_rows(&[
            [1, 0, 1, 0],
            [0, 1, 0, 1],
            [1, 0, -1, 0],
            [0, 1, 0, -1],
        ]))
        .unwrap();
        let cases = [(LatticeEndomorphism::multiplication(3, 2), &ee), (gaussian(), &e), (sum_diff, &ee)];
        for (f, torus) in cases {
            let q = f.polarization_multiplier(torus).unwrap().unwrap();
            let report = eigenvalue_modulus_check(&f, &q, DEFAULT_TOLERANCE).unwrap();
            assert!(report.passed, "{report:?}");
        }
        // Quadratic formula on x^2 - 2x + 2: 1 ± i.
        let report = eigenvalue_modulus_check(&gaussian(), &big(2), DEFAULT_TOLERANCE).unwrap();
        let mut roots = report.roots.clone();
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((roots[0] - Complex64::new(1.0, -1.0)).norm() < 1e-12);
        assert!((roots[1] - Complex64::new(1.0, 1.0)).norm() < 1e-12);
        // The wrong multiplier fails rather than passing silently.
        assert!(!eigenvalue_modulus_check(&gaussian(), &big(3), DEFAULT_TOLERANCE).unwrap().passed);
    }

    #[test]
    fn root_finder_rejects_bad_input() {
        assert!(polynomial_roots(&[1.0]).is_err());
        assert!(polynomial_roots(&[f64::NAN, 1.0]).is_err());
        let roots = polynomial_roots(&[-6.0, 11.0, -6.0, 1.0]).unwrap();
        let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (got, want) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn subvariety_examples() {
        let diagonal = IntegerMatrix::from_rows(&[[1, 0], [0, 1], [1, 0], [0, 1]]);
        let origin = TorsionPoint::origin(4);
        let two = LatticeEndomorphism::multiplication(2, 2);
        for l in 1..=5 {
            let expected = (big(2).pow(l) - 1i32).pow(2);
            assert_eq!(periodic_subvariety_count(&two, &diagonal, &origin, 1, l).unwrap(), expected);
        }

        let first_factor = IntegerMatrix::from_rows(&[[1, 0], [0, 1], [0, 0], [0, 0]]);
        let two_three = LatticeEndomorphism::linear(IntegerMatrix::diagonal(&[2, 2, 3, 3])).unwrap();
        assert_eq!(periodic_subvariety_count(&two_three, &first_factor, &origin, 1, 1).unwrap(), big(1));

        let not_periodic = TorsionPoint::reduce(&[r(0, 1), r(0, 1), r(1, 3), r(0, 1)]);
        assert_eq!(
            periodic_subvariety_count(&two_three, &first_factor, &not_periodic, 1, 1),
            Err(Error::NotPeriodic { period: 1 })
        );
    }

    #[test]
    fn subvariety_points_lie_on_the_translate() {
        let diagonal = IntegerMatrix::from_rows(&[[1, 0], [0, 1], [1, 0], [0, 1]]);
        // Q = (0, 0, 1/3, 0) is fixed by [4] but not by [2]; it has period 2 under [2].
        let q = TorsionPoint::reduce(&[r(0, 1), r(0, 1), r(1, 3), r(0, 1)]);
        let two = LatticeEndomorphism::multiplication(2, 2);
        assert!(periodic_subvariety_count(&two, &diagonal, &q, 1, 1).is_err());
        for l in 1..=3 {
            let pts = periodic_subvariety_points(&two, &diagonal, &q, 2, l).unwrap();
            assert_eq!(BigInt::from(pts.len()), periodic_subvariety_count(&two, &diagonal, &q, 2, l).unwrap());
            assert_eq!(BigInt::from(pts.len()), (big(4).pow(l) - 1i32).pow(2));
            let f2l = two.power(2 * l).unwrap();
            for p in &pts {
                assert_eq!(&f2l.apply(p.coordinates()).unwrap(), p);
                let c = p.coordinates();
                // On Y: second block minus first block is Q's offset.
                assert_eq!(
                    TorsionPoint::reduce(&[&c[2] - &c[0], &c[3] - &c[1]]),
                    TorsionPoint::reduce(&[r(1, 3), r(0, 1)])
                );
            }
        }
    }
}
