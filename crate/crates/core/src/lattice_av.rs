//! Lattice model of abelian varieties.
//!
//! A torus of dimension `g` is `R^{2g} / Z^{2g}` in lattice coordinates,
//! optionally carrying a complex structure `J` (rational, `J^2 = -I`) and a
//! Riemann form `S` (integral, alternating, nondegenerate). An endomorphism is
//! `x -> M x + t` with `M` integral and `t` rational modulo `Z^{2g}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{det, smith_normal_form, IntegerMatrix, RationalMatrix};

/// Reduces every coordinate into `[0, 1)`.
pub fn reduce_mod_one(v: &[BigRational]) -> Vec<BigRational> {
    v.iter().map(|x| x - x.floor()).collect()
}

pub fn is_integral(v: &[BigRational]) -> bool {
    v.iter().all(BigRational::is_integer)
}

fn add_vec(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// True when `a - b` lies in the lattice.
pub fn congruent_mod_lattice(a: &[BigRational], b: &[BigRational]) -> bool {
    a.len() == b.len() && is_integral(&sub_vec(a, b))
}

/// The standard 2x2 alternating block `[[0, 1], [-1, 0]]`.
pub fn standard_symplectic_block() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[[0, 1], [-1, 0]])
}

/// Block-diagonal standard Riemann form on a rank-`2g` lattice.
pub fn standard_riemann_form(g: usize) -> IntegerMatrix {
    IntegerMatrix::block_diagonal(&vec![standard_symplectic_block(); g]).expect("g >= 1")
}

/// Complex structure compatible with [`standard_riemann_form`]: `J^T S` is the identity.
pub fn standard_complex_structure(g: usize) -> RationalMatrix {
    let block = IntegerMatrix::from_rows(&[[0, 1], [-1, 0]]).to_rational();
    RationalMatrix::block_diagonal(&vec![block; g]).expect("g >= 1")
}

/// A point of finite order on the torus, stored by its canonical
/// representative in `[0, 1)^{2g}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    coordinates: Vec<BigRational>,
}

impl TorsionPoint {
    /// Canonicalizes arbitrary rational coordinates.
    pub fn reduce(coordinates: &[BigRational]) -> Self {
        Self { coordinates: reduce_mod_one(coordinates) }
    }

    /// Accepts coordinates that are already canonical.
    pub fn new(coordinates: Vec<BigRational>) -> Result<Self> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        if coordinates.iter().any(|q| *q < zero || *q >= one) {
            return Err(Error::InvalidArgument("torsion point coordinates must lie in [0, 1)".into()));
        }
        Ok(Self { coordinates })
    }

    pub fn origin(rank: usize) -> Self {
        Self { coordinates: vec![BigRational::zero(); rank] }
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.coordinates
    }

    pub fn rank(&self) -> usize {
        self.coordinates.len()
    }

    /// Order of the point in the group `R^n / Z^n`.
    pub fn order(&self) -> BigInt {
        use num_integer::Integer;
        self.coordinates.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coordinates.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexTorus {
    half_dimension: usize,
    complex_structure: Option<RationalMatrix>,
    riemann_form: Option<IntegerMatrix>,
}

impl ComplexTorus {
    /// Validates the Riemann relations for whatever data is supplied:
    /// `J^2 = -I`; `S` alternating and nondegenerate; `J^T S J = S` with
    /// `J^T S` symmetric positive definite.
    pub fn new(
        half_dimension: usize,
        complex_structure: Option<RationalMatrix>,
        riemann_form: Option<IntegerMatrix>,
    ) -> Result<Self> {
        if half_dimension == 0 {
            return Err(Error::InvalidTorus("dimension must be positive".into()));
        }
        let rank = 2 * half_dimension;
        if let Some(j) = &complex_structure {
            if j.rows() != rank || j.cols() != rank {
                return Err(Error::InvalidTorus(format!("complex structure must be {rank}x{rank}")));
            }
            let mut minus_identity = RationalMatrix::identity(rank);
            for i in 0..rank {
                minus_identity[(i, i)] = -BigRational::one();
            }
            if j.checked_mul(j)? != minus_identity {
                return Err(Error::InvalidTorus("J^2 != -I".into()));
            }
        }
        if let Some(s) = &riemann_form {
            if s.rows() != rank || s.cols() != rank {
                return Err(Error::InvalidTorus(format!("Riemann form must be {rank}x{rank}")));
            }
            if !s.is_skew_symmetric() {
                return Err(Error::InvalidTorus("Riemann form is not alternating".into()));
            }
            if det(s)?.is_zero() {
                return Err(Error::InvalidTorus("Riemann form is degenerate".into()));
            }
        }
        if let (Some(j), Some(s)) = (&complex_structure, &riemann_form) {
            let s = s.to_rational();
            let jt_s = j.transpose().checked_mul(&s)?;
            if jt_s.checked_mul(j)? != s {
                return Err(Error::InvalidTorus("J^T S J != S".into()));
            }
            if !jt_s.is_positive_definite() {
                return Err(Error::InvalidTorus("J^T S is not symmetric positive definite".into()));
            }
        }
        Ok(Self { half_dimension, complex_structure, riemann_form })
    }

    /// Torus with the standard product complex structure and principal
    /// product polarization.
    pub fn standard(g: usize) -> Result<Self> {
        Self::new(g, Some(standard_complex_structure(g)), Some(standard_riemann_form(g)))
    }

    /// Bare lattice with no complex structure or polarization attached.
    pub fn formal(g: usize) -> Result<Self> {
        Self::new(g, None, None)
    }

    pub fn half_dimension(&self) -> usize {
        self.half_dimension
    }

    pub fn rank(&self) -> usize {
        2 * self.half_dimension
    }

    pub fn complex_structure(&self) -> Option<&RationalMatrix> {
        self.complex_structure.as_ref()
    }

    pub fn riemann_form(&self) -> Option<&IntegerMatrix> {
        self.riemann_form.as_ref()
    }
}

/// `x -> M x + t` on `R^{2g} / Z^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeEndomorphism {
    matrix: IntegerMatrix,
    translation: Vec<BigRational>,
}

impl LatticeEndomorphism {
    pub fn new(matrix: IntegerMatrix, translation: Vec<BigRational>) -> Result<Self> {
        let n = matrix.ensure_square()?;
        if n % 2 == 1 {
            return Err(Error::InvalidEndomorphism(format!("odd lattice rank {n}")));
        }
        if translation.len() != n {
            return Err(Error::Dimension(format!("translation of length {} for rank {n}", translation.len())));
        }
        Ok(Self { matrix, translation: reduce_mod_one(&translation) })
    }

    /// Pure isogeny (zero translation).
    pub fn linear(matrix: IntegerMatrix) -> Result<Self> {
        let n = matrix.rows();
        Self::new(matrix, vec![BigRational::zero(); n])
    }

    /// Multiplication by `m` on a torus of dimension `g`.
    pub fn multiplication(m: i64, g: usize) -> Self {
        Self::linear(IntegerMatrix::scalar(2 * g, m)).expect("scalar matrix is square")
    }

    pub fn identity(rank: usize) -> Result<Self> {
        Self::linear(IntegerMatrix::identity(rank))
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[BigRational] {
        &self.translation
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn has_translation(&self) -> bool {
        self.translation.iter().any(|x| !x.is_zero())
    }

    /// Image of a point, canonically reduced.
    pub fn apply(&self, point: &[BigRational]) -> Result<TorsionPoint> {
        let image = self.matrix.mul_rational_vec(point)?;
        Ok(TorsionPoint::reduce(&add_vec(&image, &self.translation)))
    }

    /// Holomorphy of the lift: `M J = J M`. Vacuous without a complex structure.
    pub fn is_analytic_on(&self, torus: &ComplexTorus) -> Result<bool> {
        self.check_rank(torus)?;
        Ok(match torus.complex_structure() {
            None => true,
            Some(j) => {
                let m = self.matrix.to_rational();
                m.checked_mul(j)? == j.checked_mul(&m)?
            }
        })
    }

    fn check_rank(&self, torus: &ComplexTorus) -> Result<()> {
        if self.rank() != torus.rank() {
            return Err(Error::Dimension(format!(
                "endomorphism of rank {} on torus of rank {}",
                self.rank(),
                torus.rank()
            )));
        }
        Ok(())
    }

    /// `self ∘ other`: `x -> M_f M_h x + (M_f t_h + t_f)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::Dimension(format!("cannot compose rank {} with rank {}", self.rank(), other.rank())));
        }
        let matrix = self.matrix.checked_mul(&other.matrix)?;
        let moved = self.matrix.mul_rational_vec(&other.translation)?;
        Self::new(matrix, add_vec(&moved, &self.translation))
    }

    /// `l`-th iterate. The translation accumulates as
    /// `(M^{l-1} + ... + M + I) t`, built by `t_k = M t_{k-1} + t`.
    pub fn power(&self, l: u32) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidArgument("iterate must be positive; use LatticeEndomorphism::identity".into()));
        }
        let matrix = self.matrix.pow(l)?;
        let mut acc = self.translation.clone();
        for _ in 1..l {
            let moved = self.matrix.mul_rational_vec(&acc)?;
            acc = reduce_mod_one(&add_vec(&moved, &self.translation));
        }
        Self::new(matrix, acc)
    }

    /// Kernel cardinality `|det M|`; zero means the map is not an isogeny.
    pub fn degree(&self) -> BigInt {
        det(&self.matrix).expect("square by construction").abs()
    }

    /// The isogeny `M^ = m M^{-1}` with `M^ M = M M^ = m I`, for the least
    /// such `m` (the largest elementary divisor of `M`).
    pub fn complementary_isogeny(&self) -> Result<(Self, BigInt)> {
        if self.has_translation() {
            return Err(Error::InvalidEndomorphism("complementary isogeny needs a translation-free map".into()));
        }
        let snf = smith_normal_form(&self.matrix);
        if snf.rank() < self.rank() {
            return Err(Error::Singular);
        }
        let m = snf.largest_divisor();
        let inverse = self.matrix.to_rational().inverse()?;
        let scaled = RationalMatrix::from_big_rows(
            inverse
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|x| x * BigRational::from(m.clone())).collect())
                .collect(),
        )?;
        let dual = scaled.to_integer().expect("largest elementary divisor clears the inverse's denominators");
        Ok((Self::linear(dual)?, m))
    }

    /// The integer `q >= 1` with `M^T S M = q S`, if any.
    pub fn polarization_multiplier(&self, torus: &ComplexTorus) -> Result<Option<BigInt>> {
        self.check_rank(torus)?;
        let s = torus.riemann_form().ok_or(Error::MissingRiemannForm)?;
        let pulled = &(&self.matrix.transpose() * s) * &self.matrix;
        Ok(scalar_multiple(&pulled, s).filter(|q| *q >= BigInt::one()))
    }

    /// Restriction to the sub-torus spanned by the columns of `basis`.
    ///
    /// The basis must be saturated (all elementary divisors 1) so that it
    /// spans an abelian subvariety rather than a finite-index sublattice. The
    /// result acts on sublattice coordinates: `M B = B M'`.
    pub fn restrict_to_sublattice(&self, basis: &IntegerMatrix) -> Result<Self> {
        let sub = Sublattice::new(basis.clone())?;
        if basis.rows() != self.rank() {
            return Err(Error::Dimension(format!("basis has {} rows for rank {}", basis.rows(), self.rank())));
        }
        let image = self.matrix.checked_mul(basis)?;
        let restricted = sub.left_inverse.checked_mul(&image)?;
        if basis.checked_mul(&restricted)? != image {
            return Err(Error::NotInvariant);
        }
        let translation = sub.coordinates_of(&self.translation)?;
        Self::new(restricted, translation)
    }
}

/// A saturated sublattice with an integral left inverse of its basis.
#[derive(Clone, Debug)]
pub struct Sublattice {
    basis: IntegerMatrix,
    left_inverse: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
}

impl Sublattice {
    pub fn new(basis: IntegerMatrix) -> Result<Self> {
        let (n, c) = (basis.rows(), basis.cols());
        if c % 2 == 1 || c > n {
            return Err(Error::Dimension(format!("sublattice basis must be 2g x 2r with r <= g, got {n}x{c}")));
        }
        let snf = smith_normal_form(&basis);
        if snf.rank() < c || snf.elementary_divisors.iter().any(|d| !d.is_one()) {
            let ds: Vec<String> = snf.elementary_divisors.iter().map(ToString::to_string).collect();
            return Err(Error::NotSaturated(ds.join(", ")));
        }
        // U B V = [I; 0], so V * (first c rows of U) is a left inverse of B.
        let first_rows: Vec<usize> = (0..c).collect();
        let all_cols: Vec<usize> = (0..n).collect();
        let u_top = snf.u.select(&first_rows, &all_cols);
        let left_inverse = snf.v.checked_mul(&u_top)?;
        Ok(Self { basis, left_inverse, u: snf.u, v: snf.v })
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Solves `B y ≡ x (mod Z^n)` for `y`, reduced mod `Z^{2r}`.
    pub fn coordinates_of(&self, x: &[BigRational]) -> Result<Vec<BigRational>> {
        let c = self.rank();
        let w = self.u.mul_rational_vec(x)?;
        if !is_integral(&w[c..]) {
            return Err(Error::TranslationOutsideSpan);
        }
        let y = self.v.mul_rational_vec(&w[..c])?;
        Ok(reduce_mod_one(&y))
    }

    /// The point `B y` of the ambient torus.
    pub fn embed(&self, y: &[BigRational]) -> Result<TorsionPoint> {
        Ok(TorsionPoint::reduce(&self.basis.mul_rational_vec(y)?))
    }
}

/// `Some(q)` when `a = q b` entrywise with `b` nonzero.
fn scalar_multiple(a: &IntegerMatrix, b: &IntegerMatrix) -> Option<BigInt> {
    let (pos, pivot) = b.entries().iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let numerator = &a.entries()[pos];
    if !(numerator % pivot).is_zero() {
        return None;
    }
    let q = numerator / pivot;
    b.entries().iter().zip(a.entries()).all(|(bx, ax)| bx * &q == *ax).then_some(q)
}

/// One simple factor `A_i` of dimension `g_i`, occurring `r_i` times, with
/// polarization multiplier `q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFactorSpec {
    dimension: u32,
    multiplier: BigInt,
    multiplicity: u32,
}

impl SimpleFactorSpec {
    pub fn new(dimension: u32, multiplier: impl Into<BigInt>, multiplicity: u32) -> Result<Self> {
        let multiplier = multiplier.into();
        if dimension == 0 {
            return Err(Error::InvalidArgument("factor dimension must be >= 1".into()));
        }
        if multiplier < BigInt::from(2) {
            return Err(Error::InvalidArgument("polarization multiplier must be >= 2".into()));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidArgument("factor multiplicity must be >= 1".into()));
        }
        Ok(Self { dimension, multiplier, multiplicity })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn multiplier(&self) -> &BigInt {
        &self.multiplier
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }
}

/// Block-diagonal product of tori and endomorphisms. The product carries a
/// complex structure (resp. Riemann form) only if every factor does.
pub fn product(tori: &[ComplexTorus], endos: &[LatticeEndomorphism]) -> Result<(ComplexTorus, LatticeEndomorphism)> {
    if tori.is_empty() || endos.is_empty() {
        return Err(Error::InvalidArgument("product of no factors".into()));
    }
    if tori.len() != endos.len() {
        return Err(Error::Dimension(format!("{} tori but {} endomorphisms", tori.len(), endos.len())));
    }
    for (t, e) in tori.iter().zip(endos) {
        e.check_rank(t)?;
    }
    let g = tori.iter().map(ComplexTorus::half_dimension).sum();
    let j = tori
        .iter()
        .map(|t| t.complex_structure().cloned())
        .collect::<Option<Vec<_>>>()
        .map(|blocks| RationalMatrix::block_diagonal(&blocks))
        .transpose()?;
    let s = tori
        .iter()
        .map(|t| t.riemann_form().cloned())
        .collect::<Option<Vec<_>>>()
        .map(|blocks| IntegerMatrix::block_diagonal(&blocks))
        .transpose()?;
    let matrices: Vec<IntegerMatrix> = endos.iter().map(|e| e.matrix().clone()).collect();
    let translation: Vec<BigRational> = endos.iter().flat_map(|e| e.translation().to_vec()).collect();
    let torus = ComplexTorus::new(g, j, s)?;
    let endo = LatticeEndomorphism::new(IntegerMatrix::block_diagonal(&matrices)?, translation)?;
    Ok((torus, endo))
}
