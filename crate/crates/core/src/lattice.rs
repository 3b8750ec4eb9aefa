//! Integer model of H₂(M; ℤ): the intersection form, the canonical class and
//! the symplectic area functional.
//!
//! A lattice is immutable once built and is shared between classes through an
//! [`Arc`]. Every [`HClass`] remembers the lattice it lives in, and operations
//! mixing classes from different lattices are rejected.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice rank must be positive")]
    EmptyBasis,
    #[error("{what} has length {got}, expected rank {rank}")]
    DimensionMismatch { what: &'static str, got: usize, rank: usize },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("canonical class is not characteristic: Q({symbol},{symbol}) and K·{symbol} differ mod 2")]
    NotCharacteristic { symbol: String },
    #[error("duplicate basis symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("invalid basis symbol `{0}`")]
    InvalidSymbol(String),
    #[error("classes belong to different lattices (`{left}` vs `{right}`)")]
    LatticeMismatch { left: String, right: String },
}

/// Counts of positive, negative and zero diagonal entries after congruence
/// diagonalization over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    name: String,
    symbols: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    area: Vec<Rational64>,
    b2plus_override: Option<u32>,
}

impl IntersectionLattice {
    /// Builds and validates a lattice. The Gram matrix must be symmetric and
    /// the canonical class characteristic, so that `c₁(A) + A·A` is always even.
    pub fn new(
        name: impl Into<String>,
        symbols: Vec<String>,
        gram: Vec<Vec<i64>>,
        canonical: Vec<i64>,
        area: Vec<Rational64>,
        b2plus_override: Option<u32>,
    ) -> Result<Arc<Self>, LatticeError> {
        let rank = symbols.len();
        if rank == 0 {
            return Err(LatticeError::EmptyBasis);
        }
        for (i, s) in symbols.iter().enumerate() {
            if !is_symbol(s) {
                return Err(LatticeError::InvalidSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(LatticeError::DuplicateSymbol(s.clone()));
            }
        }
        check_len("gram", gram.len(), rank)?;
        for row in &gram {
            check_len("gram row", row.len(), rank)?;
        }
        check_len("canonical class", canonical.len(), rank)?;
        check_len("area", area.len(), rank)?;
        for i in 0..rank {
            for j in (i + 1)..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric { row: i, col: j });
                }
            }
        }
        let lattice = IntersectionLattice {
            name: name.into(),
            symbols,
            gram,
            canonical,
            area,
            b2plus_override,
        };
        for i in 0..rank {
            let k_dot_e = lattice.pair_coords(&lattice.canonical, &unit(rank, i));
            if (lattice.gram[i][i] - k_dot_e).rem_euclid(2) != 0 {
                return Err(LatticeError::NotCharacteristic {
                    symbol: lattice.symbols[i].clone(),
                });
            }
        }
        Ok(Arc::new(lattice))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_index(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical_coords(&self) -> &[i64] {
        &self.canonical
    }

    pub fn area(&self) -> &[Rational64] {
        &self.area
    }

    pub fn b2plus_override(&self) -> Option<u32> {
        self.b2plus_override
    }

    /// `xᵀ·Q·y` on raw coordinate vectors.
    pub fn pair_coords(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut total = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row: i64 = self.gram[i].iter().zip(y).map(|(q, yj)| q * yj).sum();
            total += xi * row;
        }
        total
    }

    /// Intersection pairing of two classes of this lattice.
    pub fn pair(&self, a: &HClass, b: &HClass) -> Result<i64, LatticeError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.pair_coords(&a.coords, &b.coords))
    }

    pub fn check_member(&self, a: &HClass) -> Result<(), LatticeError> {
        if a.lattice.as_ref() == self {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch {
                left: self.name.clone(),
                right: a.lattice.name.clone(),
            })
        }
    }

    /// Sign counts of the intersection form, from exact congruence
    /// diagonalization over ℚ.
    pub fn inertia(&self) -> Inertia {
        inertia(&self.gram)
    }

    /// b₂⁺: the override when present, otherwise the number of positive
    /// eigenvalues of the Gram matrix.
    pub fn b2_plus(&self) -> u32 {
        match self.b2plus_override {
            Some(b) => b,
            None => self.inertia().positive as u32,
        }
    }

    /// Coordinates of the class Poincaré dual to the area functional, i.e. the
    /// solution `w` of `Q·w = ω`. `None` when the form is degenerate.
    pub fn area_dual(&self) -> Option<Vec<BigRational>> {
        let rhs: Vec<BigRational> = self
            .area
            .iter()
            .map(|r| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
            .collect();
        solve(&self.gram, &rhs)
    }

    /// Square of the class dual to ω. Positive exactly when the hyperplane
    /// `ω = 0` separates the two halves of the positive cone (for b₂⁺ = 1).
    pub fn area_dual_square(&self) -> Option<BigRational> {
        let w = self.area_dual()?;
        let n = self.rank();
        let mut total = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                total += &w[i] * &w[j] * BigRational::from_integer(BigInt::from(self.gram[i][j]));
            }
        }
        Some(total)
    }
}

fn check_len(what: &'static str, got: usize, rank: usize) -> Result<(), LatticeError> {
    if got == rank {
        Ok(())
    } else {
        Err(LatticeError::DimensionMismatch { what, got, rank })
    }
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

fn to_rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Symmetric congruence reduction `A ↦ E·A·Eᵀ` to diagonal form.
pub fn inertia(gram: &[Vec<i64>]) -> Inertia {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| row.iter().copied().map(to_rational).collect())
        .collect();
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // e_i ← e_i + e_j; the new diagonal entry is 2·a_ij ≠ 0.
                for l in 0..n {
                    let v = a[j][l].clone();
                    a[i][l] += v;
                }
                for l in 0..n {
                    let v = a[l][j].clone();
                    a[l][i] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[i][i].clone();
        for j in (i + 1)..n {
            if a[j][i].is_zero() {
                continue;
            }
            let f = &a[j][i] / &pivot;
            for l in i..n {
                let v = &f * &a[i][l];
                a[j][l] -= v;
            }
            for l in i..n {
                let v = &f * &a[l][i];
                a[l][j] -= v;
            }
        }
    }
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    for (i, row) in a.iter().enumerate() {
        let d = &row[i];
        if d.is_positive() {
            out.positive += 1;
        } else if d.is_negative() {
            out.negative += 1;
        } else {
            out.zero += 1;
        }
    }
    out
}

/// Gaussian elimination over ℚ for `Q·x = b`.
fn solve(gram: &[Vec<i64>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = gram.len();
    let mut m: Vec<Vec<BigRational>> = gram
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<BigRational> = row.iter().copied().map(to_rational).collect();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for l in col..=n {
            m[col][l] = &m[col][l] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for l in col..=n {
                    let v = &f * &m[col][l];
                    m[r][l] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// A homology class: integer coordinates in the basis of its lattice.
#[derive(Clone)]
pub struct HClass {
    lattice: Arc<IntersectionLattice>,
    coords: Vec<i64>,
}

impl HClass {
    pub fn new(lattice: &Arc<IntersectionLattice>, coords: Vec<i64>) -> Result<Self, LatticeError> {
        check_len("class coordinates", coords.len(), lattice.rank())?;
        Ok(HClass { lattice: Arc::clone(lattice), coords })
    }

    pub fn zero(lattice: &Arc<IntersectionLattice>) -> Self {
        HClass { lattice: Arc::clone(lattice), coords: vec![0; lattice.rank()] }
    }

    /// The `i`-th basis vector.
    pub fn basis(lattice: &Arc<IntersectionLattice>, i: usize) -> Self {
        HClass { lattice: Arc::clone(lattice), coords: unit(lattice.rank(), i) }
    }

    pub fn canonical(lattice: &Arc<IntersectionLattice>) -> Self {
        HClass { lattice: Arc::clone(lattice), coords: lattice.canonical.clone() }
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn same_lattice(&self, other: &HClass) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice
    }

    fn expect_same(&self, other: &HClass) {
        assert!(
            self.same_lattice(other),
            "classes belong to different lattices (`{}` vs `{}`)",
            self.lattice.name,
            other.lattice.name
        );
    }

    /// Intersection pairing, rejecting classes of another lattice.
    pub fn pair(&self, other: &HClass) -> Result<i64, LatticeError> {
        if !self.same_lattice(other) {
            return Err(LatticeError::LatticeMismatch {
                left: self.lattice.name.clone(),
                right: other.lattice.name.clone(),
            });
        }
        Ok(self.lattice.pair_coords(&self.coords, &other.coords))
    }

    /// Intersection pairing.
    ///
    /// # Panics
    ///
    /// Panics if the classes live in different lattices; use [`HClass::pair`]
    /// for a checked version.
    pub fn dot(&self, other: &HClass) -> i64 {
        self.expect_same(other);
        self.lattice.pair_coords(&self.coords, &other.coords)
    }

    pub fn square(&self) -> i64 {
        self.lattice.pair_coords(&self.coords, &self.coords)
    }

    /// `c₁(A) = −K·A`.
    pub fn c1(&self) -> i64 {
        -self.lattice.pair_coords(&self.lattice.canonical, &self.coords)
    }

    /// `K·A`.
    pub fn k_dot(&self) -> i64 {
        -self.c1()
    }

    pub fn omega(&self) -> Rational64 {
        self.coords
            .iter()
            .zip(&self.lattice.area)
            .fold(Rational64::zero(), |acc, (&c, w)| acc + w * c)
    }

    pub fn scale(&self, factor: i64) -> HClass {
        HClass {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn try_add(&self, other: &HClass) -> Result<HClass, LatticeError> {
        self.pair(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &HClass) -> Result<HClass, LatticeError> {
        self.pair(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &HClass, f: impl Fn(i64, i64) -> i64) -> HClass {
        HClass {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// gcd of the coordinates (0 for the zero class).
    pub fn content(&self) -> i64 {
        self.coords.iter().fold(0i64, |g, &c| num_integer::gcd(g, c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Splits `A = d·P` with `P` primitive and `d > 0`. The zero class has no
    /// ray and returns `None`.
    pub fn primitive_part(&self) -> Option<(HClass, i64)> {
        let d = self.content();
        if d == 0 {
            return None;
        }
        Some((
            HClass {
                lattice: Arc::clone(&self.lattice),
                coords: self.coords.iter().map(|c| c / d).collect(),
            },
            d,
        ))
    }

    /// True when `self = λ·other` for some rational `λ > 0`.
    pub fn positively_proportional(&self, other: &HClass) -> bool {
        match (self.primitive_part(), other.primitive_part()) {
            (Some((p, _)), Some((q, _))) => p == q,
            _ => false,
        }
    }

    /// True when the two classes span a line over ℚ (either may be zero).
    pub fn rationally_proportional(&self, other: &HClass) -> bool {
        let n = self.coords.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let minor = self.coords[i] as i128 * other.coords[j] as i128
                    - self.coords[j] as i128 * other.coords[i] as i128;
                if minor != 0 {
                    return false;
                }
            }
        }
        true
    }
}

impl PartialEq for HClass {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.same_lattice(other)
    }
}

impl Eq for HClass {}

impl Hash for HClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for HClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates; classes of different lattices fall back to
/// the lattice name.
impl Ord for HClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords).then_with(|| {
            if self.same_lattice(other) {
                Ordering::Equal
            } else {
                self.lattice.name.cmp(&other.lattice.name)
            }
        })
    }
}

impl<'a> Add<&'a HClass> for &'a HClass {
    type Output = HClass;

    fn add(self, rhs: &HClass) -> HClass {
        self.expect_same(rhs);
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a HClass> for &'a HClass {
    type Output = HClass;

    fn sub(self, rhs: &HClass) -> HClass {
        self.expect_same(rhs);
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &HClass {
    type Output = HClass;

    fn neg(self) -> HClass {
        self.scale(-1)
    }
}

impl fmt::Debug for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HClass({})", self)
    }
}

/// Writes the class as a signed combination of basis symbols, e.g.
/// `3L - E1 - 2E2`; the zero class is `0`.
impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, sym) in self.coords.iter().zip(&self.lattice.symbols) {
            if *c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, *c < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag != 1 {
                write!(f, "{}", mag)?;
            }
            f.write_str(sym)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn hyperbolic() -> Arc<IntersectionLattice> {
        IntersectionLattice::new(
            "h",
            vec!["A1".into(), "A2".into()],
            vec![vec![0, 1], vec![1, 0]],
            vec![-2, -2],
            vec![r(1), r(1)],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rejects_asymmetric_gram() {
        let err = IntersectionLattice::new(
            "bad",
            vec!["X".into(), "Y".into()],
            vec![vec![0, 1], vec![2, 0]],
            vec![0, 0],
            vec![r(1), r(1)],
            None,
        )
        .unwrap_err();
        assert_eq!(err, LatticeError::NotSymmetric { row: 0, col: 1 });
    }

    #[test]
    fn rejects_non_characteristic_canonical() {
        // K = -L on CP² gives Q(L,L) = 1, K·L = -1 (fine); K = -2L breaks parity.
        let err = IntersectionLattice::new(
            "bad",
            vec!["L".into()],
            vec![vec![1]],
            vec![-2],
            vec![r(1)],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NotCharacteristic { .. }));
    }

    #[test]
    fn hyperbolic_pairing_and_inertia() {
        let lat = hyperbolic();
        let a1 = HClass::basis(&lat, 0);
        let a2 = HClass::basis(&lat, 1);
        assert_eq!(a1.dot(&a2), 1);
        assert_eq!(a1.dot(&a1), 0);
        assert_eq!(HClass::zero(&lat).dot(&a2), 0);
        assert_eq!(lat.inertia(), Inertia { positive: 1, negative: 1, zero: 0 });
        assert_eq!((&a1 + &a2).omega(), r(2));
        assert_eq!(HClass::zero(&lat).omega(), r(0));
    }

    #[test]
    fn cross_lattice_rejected() {
        let a = HClass::basis(&hyperbolic(), 0);
        let other = IntersectionLattice::new(
            "cp2",
            vec!["L".into()],
            vec![vec![1]],
            vec![-3],
            vec![r(1)],
            None,
        )
        .unwrap();
        let l = HClass::basis(&other, 0);
        assert!(matches!(a.pair(&l), Err(LatticeError::LatticeMismatch { .. })));
        assert!(a.try_add(&l).is_err());
    }

    #[test]
    fn degenerate_form_inertia() {
        assert_eq!(
            inertia(&[vec![0, 0], vec![0, 0]]),
            Inertia { positive: 0, negative: 0, zero: 2 }
        );
        assert_eq!(
            inertia(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]]),
            Inertia { positive: 1, negative: 2, zero: 0 }
        );
    }

    #[test]
    fn display_and_primitive_part() {
        let lat = hyperbolic();
        let c = HClass::new(&lat, vec![4, -6]).unwrap();
        assert_eq!(c.to_string(), "4A1 - 6A2");
        let (p, d) = c.primitive_part().unwrap();
        assert_eq!(p.coords(), &[2, -3]);
        assert_eq!(d, 2);
        assert!(c.positively_proportional(&p));
        assert!(!c.positively_proportional(&-&p));
        assert!(c.rationally_proportional(&-&p));
        assert_eq!(HClass::zero(&lat).to_string(), "0");
    }
}
