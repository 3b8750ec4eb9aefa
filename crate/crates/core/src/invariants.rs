//! Scalar formulas attached to a class: point counts, adjunction genus,
//! moduli dimensions, the exceptional-sphere corrections and cone tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{HClass, IntersectionLattice, LatticeError};
use crate::model::ManifoldModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{0} is not in the stored exceptional set")]
    NotExceptional(String),
    #[error("classify_negative needs A·A < 0, but {class} has square {square}")]
    NonNegativeSquare { class: String, square: i64 },
    #[error("the light-cone check needs b₂⁺ = 1, model has b₂⁺ = {0}")]
    B2PlusNotOne(u32),
    #[error("the area functional is not dual to a class of positive square; no forward cone")]
    NoForwardCone,
    #[error("{0} is not in the closed forward cone")]
    OutsideCone(String),
}

/// `k(A) = ½(c₁(A) + A·A)`, the number of point constraints.
///
/// Always an integer: lattices are built with a characteristic canonical
/// class, so `c₁(A) + A·A` is even.
pub fn k(a: &HClass) -> i64 {
    let twice = a.c1() + a.square();
    debug_assert!(twice % 2 == 0, "canonical class not characteristic");
    twice / 2
}

/// `m_E(A) = max(−A·E, 0)` for a stored exceptional class `E`.
pub fn m_e(model: &ManifoldModel, a: &HClass, e: &HClass) -> Result<i64, InvariantError> {
    model.lattice().check_member(a)?;
    if !model.is_exceptional(e) {
        return Err(InvariantError::NotExceptional(e.to_string()));
    }
    Ok(mult_on(a, e))
}

fn mult_on(a: &HClass, e: &HClass) -> i64 {
    (-a.dot(e)).max(0)
}

/// `k′(A) = k(A) + ½ Σ_E (m_E(A)² − m_E(A))` over the stored ℰ.
pub fn k_prime(model: &ManifoldModel, a: &HClass) -> i64 {
    let extra: i64 = model
        .exceptional()
        .iter()
        .map(|e| {
            let m = mult_on(a, e);
            m * (m - 1) / 2
        })
        .sum();
    k(a) + extra
}

/// `ℓ_g(A) = c₁(A) + g − 1`.
pub fn ell_g(a: &HClass, g: i64) -> i64 {
    a.c1() + g - 1
}

/// Genus of an embedded curve in class `A`: `1 + ½(K·A + A·A)`. Negative
/// values mean no embedded connected representative exists.
pub fn genus_embedded(a: &HClass) -> i64 {
    1 + (a.k_dot() + a.square()) / 2
}

/// Dimension of the automorphism group of a closed genus-g surface.
pub fn dim_automorphisms(g: i64) -> i64 {
    match g {
        0 => 6,
        1 => 2,
        _ => 0,
    }
}

/// `2(c₁(A) + g − 1) + dim G_g`.
pub fn moduli_dimension(a: &HClass, g: i64) -> i64 {
    2 * ell_g(a, g) + dim_automorphisms(g)
}

/// `E·A ≥ −1` for every stored `E`.
pub fn is_good_class(model: &ManifoldModel, a: &HClass) -> bool {
    model.exceptional().iter().all(|e| a.dot(e) >= -1)
}

/// Result of stripping multiply covered exceptional spheres from `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: HClass,
    /// `(E, m_E(A))` for every stored `E` with `E·A < −1`, in ℰ order.
    pub strips: Vec<(HClass, i64)>,
    /// The stripped classes are pairwise orthogonal and orthogonal to the
    /// reduced class, which is what makes `k(B) = k′(A)` hold.
    pub orthogonal: bool,
}

/// `B = A − Σ_{E·A < −1} m_E(A)·E`.
pub fn reduce_multicovers(model: &ManifoldModel, a: &HClass) -> Reduction {
    let strips: Vec<(HClass, i64)> = model
        .exceptional()
        .iter()
        .filter(|e| a.dot(e) < -1)
        .map(|e| (e.clone(), mult_on(a, e)))
        .collect();
    let mut reduced = a.clone();
    for (e, m) in &strips {
        reduced = &reduced - &e.scale(*m);
    }
    let orthogonal = strips.iter().enumerate().all(|(i, (e, _))| {
        e.dot(&reduced) == 0 && strips[i + 1..].iter().all(|(f, _)| e.dot(f) == 0)
    });
    Reduction { reduced, strips, orthogonal }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegKind {
    ExceptionalSphere,
    NotRepresentable,
}

/// Verdict on a class of negative square. The witness is the `(g, c₁, A·A)`
/// triple that solved both constraints; it is always `(0, 1, −1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegClassVerdict {
    pub kind: NegKind,
    pub witness: Option<(i64, i64, i64)>,
}

/// Decides whether a somewhere-injective curve of some genus g can represent
/// `A` (with `A·A < 0`) for generic J: it needs `c₁(A) + g − 1 ≥ 0` (non-negative
/// index) and `c₁(A) + 2(g − 1) ≤ A·A` (adjunction). The g range is scanned
/// exhaustively.
pub fn classify_negative(a: &HClass) -> Result<NegClassVerdict, InvariantError> {
    let square = a.square();
    if square >= 0 {
        return Err(InvariantError::NonNegativeSquare { class: a.to_string(), square });
    }
    let c1 = a.c1();
    let g_max = (1 + div_ceil(square - c1, 2)).max(0);
    for g in 0..=g_max {
        if c1 + g - 1 >= 0 && c1 + 2 * (g - 1) <= square {
            return Ok(NegClassVerdict {
                kind: NegKind::ExceptionalSphere,
                witness: Some((g, c1, square)),
            });
        }
    }
    Ok(NegClassVerdict { kind: NegKind::NotRepresentable, witness: None })
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

/// `A·A ≥ 0` and `ω(A) ≥ 0`, or both strict.
pub fn in_forward_cone(a: &HClass, strict: bool) -> bool {
    let square = a.square();
    let area = a.omega();
    if strict {
        square > 0 && area.is_positive()
    } else {
        square >= 0 && !area.is_negative()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LightConeReport {
    pub first: HClass,
    pub second: HClass,
    pub product: i64,
    pub proportional_nulls: bool,
    pub passed: bool,
}

/// For b₂⁺ = 1, two classes of the closed forward cone pair non-negatively,
/// and the product vanishes only for proportional null classes.
pub fn light_cone_pair_check(b1: &HClass, b2: &HClass) -> Result<LightConeReport, InvariantError> {
    b1.pair(b2)?;
    let lattice = b1.lattice();
    let b2plus = lattice.b2_plus();
    if b2plus != 1 {
        return Err(InvariantError::B2PlusNotOne(b2plus));
    }
    check_forward_cone_exists(lattice)?;
    for b in [b1, b2] {
        if !in_forward_cone(b, false) {
            return Err(InvariantError::OutsideCone(b.to_string()));
        }
    }
    let product = b1.dot(b2);
    let proportional_nulls = b1.square() == 0 && b2.square() == 0 && b1.rationally_proportional(b2);
    let passed = product > 0 || (product == 0 && proportional_nulls);
    Ok(LightConeReport {
        first: b1.clone(),
        second: b2.clone(),
        product,
        proportional_nulls,
        passed,
    })
}

fn check_forward_cone_exists(lattice: &IntersectionLattice) -> Result<(), InvariantError> {
    match lattice.area_dual_square() {
        Some(sq) if sq > BigRational::from_integer(BigInt::zero()) => Ok(()),
        _ => Err(InvariantError::NoForwardCone),
    }
}
