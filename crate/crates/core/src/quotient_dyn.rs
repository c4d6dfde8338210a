//! Finite groups of affine automorphisms acting on a lattice torus, and the
//! fixed points of an endomorphism pushed down to the quotient.
//!
//! The quotient is never built. Everything is computed upstairs and then
//! grouped into orbits.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{det, smith_normal_form, IntegerMatrix};
use crate::fixpoint::{enumerate_fixed_with_cap, solve_congruence, DEFAULT_ENUMERATION_CAP};
use crate::lattice_av::{is_integral, LatticeEndomorphism, TorsionPoint};

/// `x -> U x + s` with `U` unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAutomorphism {
    map: LatticeEndomorphism,
}

impl AffineAutomorphism {
    pub fn new(linear: IntegerMatrix, translation: Vec<BigRational>) -> Result<Self> {
        let map = LatticeEndomorphism::new(linear, translation)?;
        if !det(map.matrix())?.abs().is_one() {
            return Err(Error::InvalidAction("linear part is not unimodular".into()));
        }
        Ok(Self { map })
    }

    pub fn identity(rank: usize) -> Self {
        Self { map: LatticeEndomorphism::identity(rank).expect("even rank") }
    }

    pub fn linear(&self) -> &IntegerMatrix {
        self.map.matrix()
    }

    pub fn translation(&self) -> &[BigRational] {
        self.map.translation()
    }

    pub fn as_endomorphism(&self) -> &LatticeEndomorphism {
        &self.map
    }

    pub fn rank(&self) -> usize {
        self.map.rank()
    }

    pub fn is_identity(&self) -> bool {
        *self.map.matrix() == IntegerMatrix::identity(self.rank()) && !self.map.has_translation()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { map: self.map.compose(&other.map)? })
    }

    pub fn apply(&self, point: &TorsionPoint) -> Result<TorsionPoint> {
        self.map.apply(point.coordinates())
    }

    /// True when `x -> U x + s` has a fixed point on the torus, i.e. when
    /// `(U - I) x ≡ -s` is solvable. With `P (U - I) Q = D`, solvability
    /// reduces to `(P(-s))_i ∈ Z` for every zero elementary divisor `d_i`.
    pub fn has_fixed_point(&self) -> Result<bool> {
        let a = self.linear().minus_identity()?;
        let snf = smith_normal_form(&a);
        let rhs: Vec<BigRational> = self.translation().iter().map(|x| -x).collect();
        let c = snf.u.mul_rational_vec(&rhs)?;
        Ok(snf.elementary_divisors.iter().zip(&c).filter(|(d, _)| d.is_zero()).all(|(_, ci)| ci.is_integer()))
    }
}

/// A finite list of affine automorphisms meant to form a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    elements: Vec<AffineAutomorphism>,
}

impl GroupAction {
    pub fn new(elements: Vec<AffineAutomorphism>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidAction("empty group".into()));
        };
        let rank = first.rank();
        if elements.iter().any(|e| e.rank() != rank) {
            return Err(Error::InvalidAction("elements act on different ranks".into()));
        }
        Ok(Self { elements })
    }

    pub fn trivial(rank: usize) -> Self {
        Self { elements: vec![AffineAutomorphism::identity(rank)] }
    }

    pub fn elements(&self) -> &[AffineAutomorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.elements[0].rank()
    }

    fn index_of(&self, element: &AffineAutomorphism) -> Option<usize> {
        self.elements.iter().position(|e| e == element)
    }

    /// Smallest point of the orbit; a canonical orbit label.
    pub fn orbit_key(&self, point: &TorsionPoint) -> Result<TorsionPoint> {
        let mut best = point.clone();
        for g in &self.elements {
            let image = g.apply(point)?;
            if image < best {
                best = image;
            }
        }
        Ok(best)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionValidation {
    pub has_identity: bool,
    pub closed: bool,
    pub has_inverses: bool,
    pub free: bool,
    pub distinct: bool,
    pub violations: Vec<String>,
}

impl ActionValidation {
    pub fn is_valid(&self) -> bool {
        self.has_identity && self.closed && self.has_inverses && self.distinct
    }

    pub fn is_valid_and_free(&self) -> bool {
        self.is_valid() && self.free
    }
}

/// Checks the group axioms and freeness, naming every violation.
pub fn validate_action(action: &GroupAction) -> Result<ActionValidation> {
    let elements = action.elements();
    let mut report = ActionValidation::default();

    let distinct: BTreeSet<String> = elements.iter().map(|e| format!("{e:?}")).collect();
    report.distinct = distinct.len() == elements.len();
    if !report.distinct {
        report.violations.push("duplicate elements".into());
    }

    report.has_identity = elements.iter().any(AffineAutomorphism::is_identity);
    if !report.has_identity {
        report.violations.push("identity missing".into());
    }

    report.closed = true;
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if action.index_of(&a.compose(b)?).is_none() {
                report.closed = false;
                report.violations.push(format!("not closed: g{i} ∘ g{j} is outside the group"));
            }
        }
    }

    report.has_inverses = true;
    for (i, a) in elements.iter().enumerate() {
        let has_inverse = elements.iter().any(|b| a.compose(b).map(|c| c.is_identity()).unwrap_or(false));
        if !has_inverse {
            report.has_inverses = false;
            report.violations.push(format!("g{i} has no inverse in the group"));
        }
    }

    report.free = true;
    for (i, a) in elements.iter().enumerate() {
        if !a.is_identity() && a.has_fixed_point()? {
            report.free = false;
            report.violations.push(format!("not free: g{i} has a fixed point"));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCompatibility {
    pub compatible: bool,
    /// `permutation[i] = Some(j)` when `f ∘ g_i = g_j ∘ f`.
    pub permutation: Vec<Option<usize>>,
    pub failures: Vec<String>,
}

/// Whether `f` normalizes the action, so that it descends to the quotient.
pub fn lift_compatibility(f: &LatticeEndomorphism, action: &GroupAction) -> Result<LiftCompatibility> {
    if f.rank() != action.rank() {
        return Err(Error::Dimension(format!(
            "endomorphism of rank {} against action of rank {}",
            f.rank(),
            action.rank()
        )));
    }
    let mut permutation = Vec::with_capacity(action.order());
    let mut failures = Vec::new();
    for (i, g) in action.elements().iter().enumerate() {
        let lhs = f.compose(g.as_endomorphism())?;
        let mut matched = None;
        for (j, h) in action.elements().iter().enumerate() {
            if h.as_endomorphism().compose(f)? == lhs {
                matched = Some(j);
                break;
            }
        }
        if matched.is_none() {
            failures.push(format!("no g' with f ∘ g{i} = g' ∘ f"));
        }
        permutation.push(matched);
    }
    Ok(LiftCompatibility { compatible: failures.is_empty(), permutation, failures })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub l: u32,
    pub group_order: usize,
    /// `|Fix(f^l)|` on the cover.
    pub upstairs_count: BigInt,
    /// Number of G-orbits met by `Fix(f^l)`; each gives a fixed point downstairs.
    pub orbit_count: BigInt,
    /// `upstairs_count / |G|`, the certified lower bound.
    pub bound: BigRational,
    pub bound_holds: bool,
    /// `(q^l - 1)^n / |G|` with `n` the dimension, reported as stated.
    pub formula_bound: BigRational,
    /// Exact number of fixed points of the induced map on the quotient:
    /// orbits of points with `f^l(P) ∈ G·P`. `None` if some `M^l - U_g` is
    /// singular.
    pub downstairs_count: Option<BigInt>,
}

/// Fixed points of `f^l` grouped into orbits of a free action.
pub fn quotient_fixed_lower_bound(
    f: &LatticeEndomorphism,
    action: &GroupAction,
    q: &BigInt,
    l: u32,
) -> Result<QuotientReport> {
    let validation = validate_action(action)?;
    if !validation.is_valid_and_free() {
        return Err(Error::InvalidAction(validation.violations.join("; ")));
    }
    let lift = lift_compatibility(f, action)?;
    if !lift.compatible {
        return Err(Error::IncompatibleLift(lift.failures.join("; ")));
    }

    let fixed = enumerate_fixed_with_cap(f, l, DEFAULT_ENUMERATION_CAP)?;
    let orbits = count_orbits(action, &fixed)?;
    let order = BigInt::from(action.order());
    let upstairs_count = BigInt::from(fixed.len());
    let bound = BigRational::new(upstairs_count.clone(), order.clone());
    let orbit_count = BigInt::from(orbits);
    let bound_holds = BigRational::from(orbit_count.clone()) >= bound;

    let n = (f.rank() / 2) as u32;
    let formula_bound = BigRational::new((q.pow(l) - BigInt::one()).pow(n), order);

    Ok(QuotientReport {
        l,
        group_order: action.order(),
        upstairs_count,
        orbit_count,
        bound,
        bound_holds,
        formula_bound,
        downstairs_count: downstairs_fixed_count(f, action, l)?,
    })
}

fn count_orbits(action: &GroupAction, points: &[TorsionPoint]) -> Result<usize> {
    let mut keys = BTreeMap::new();
    for p in points {
        *keys.entry(action.orbit_key(p)?).or_insert(0usize) += 1;
    }
    Ok(keys.len())
}

/// Orbits of `{P : f^l(P) = g P for some g}`, solving
/// `(M^l - U_g) P ≡ s_g - t_l` for each element.
fn downstairs_fixed_count(f: &LatticeEndomorphism, action: &GroupAction, l: u32) -> Result<Option<BigInt>> {
    let fl = f.power(l)?;
    let mut all = BTreeSet::new();
    for g in action.elements() {
        let a = fl.matrix().checked_sub(g.linear())?;
        let rhs: Vec<BigRational> = g.translation().iter().zip(fl.translation()).map(|(s, t)| s - t).collect();
        match solve_congruence(&a, &rhs, DEFAULT_ENUMERATION_CAP) {
            Ok(points) => all.extend(points),
            Err(Error::Singular) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    let points: Vec<TorsionPoint> = all.into_iter().collect();
    debug_assert!(points.iter().all(|p| {
        let image = fl.apply(p.coordinates()).unwrap();
        action.elements().iter().any(|g| is_integral(&diff(g.apply(p).unwrap().coordinates(), image.coordinates())))
    }));
    Ok(Some(BigInt::from(count_orbits(action, &points)?)))
}

fn diff(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The order-2 action on `E x E` generated by `(x, y) -> (x + (1/2, 0), -y)`.
pub fn bielliptic_action() -> GroupAction {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let z = BigRational::zero();
    let g = AffineAutomorphism::new(IntegerMatrix::diagonal(&[1, 1, -1, -1]), vec![half, z.clone(), z.clone(), z])
        .expect("unimodular");
    GroupAction::new(vec![AffineAutomorphism::identity(4), g]).expect("same rank")
}
