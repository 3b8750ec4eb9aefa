//! Fiber-class bookkeeping for gluing manifolds along square-zero tori.
//!
//! A [`Piece`] records the signed count of tori in the fiber class of a
//! compact manifold with `boundary_count` boundary components of the form
//! `T²×S¹`. Gluing two pieces along one boundary component from each adds the
//! counts, since curves crossing the gluing region contribute nothing (the
//! boundary circle has Euler characteristic 0).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberSumError {
    #[error("cannot glue along piece `{0}`: it has no boundary component")]
    Closed(String),
    #[error("elliptic surface index must be at least 1, got {0}")]
    BadIndex(i64),
    #[error("integer overflow in fiber count")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub name: String,
    pub boundary_count: u32,
    pub fiber_gr: i64,
    /// Boundary classes other than the fiber all have vanishing invariant.
    pub other_boundary_classes_vanish: bool,
    /// How the piece was obtained, one line per step.
    pub notes: Vec<String>,
}

impl Piece {
    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: boundary={} Gr(F)={}", self.name, self.boundary_count, self.fiber_gr)
    }
}

fn base(name: &str, boundary_count: u32, fiber_gr: i64, note: &str) -> Piece {
    Piece {
        name: name.to_string(),
        boundary_count,
        fiber_gr,
        other_boundary_classes_vanish: true,
        notes: vec![note.to_string()],
    }
}

pub fn d2xt2() -> Piece {
    base("D2xT2", 1, 1, "Gr(D²×T², [F]) = 1: the tori {z}×T² foliate, one through each point")
}

pub fn v1() -> Piece {
    base("V(1)", 0, 1, "Gr(V(1), F) = 1: rational elliptic surface, one fiber through each point")
}

pub fn v1_minus_nbhd() -> Piece {
    base("V(1)-N(F)", 1, 0, "Gr(V(1) − Int N(F), [F]) = 0: fibers through a point all leave the piece")
}

/// The collar `N = T²×annulus` with a fiber neighbourhood `P` removed; it has
/// three boundary components.
pub fn collar_minus_fiber() -> Piece {
    base("N-P", 3, -1, "Gr(N − Int P, [F]) = −1: one torus of negative sign")
}

/// The base pieces, in a fixed order.
pub fn base_pieces() -> Vec<Piece> {
    vec![d2xt2(), v1(), v1_minus_nbhd(), collar_minus_fiber()]
}

/// Glues one boundary component of `a` to one of `b`.
pub fn glue(a: &Piece, b: &Piece) -> Result<Piece, FiberSumError> {
    for p in [a, b] {
        if p.boundary_count == 0 {
            return Err(FiberSumError::Closed(p.name.clone()));
        }
    }
    let fiber_gr = a.fiber_gr.checked_add(b.fiber_gr).ok_or(FiberSumError::Overflow)?;
    let mut notes = a.notes.clone();
    notes.extend(b.notes.iter().cloned());
    notes.push(format!(
        "glue {} ({}) + {} ({}) = {}",
        a.name, a.fiber_gr, b.name, b.fiber_gr, fiber_gr
    ));
    Ok(Piece {
        name: format!("{}+{}", a.name, b.name),
        boundary_count: a.boundary_count + b.boundary_count - 2,
        fiber_gr,
        other_boundary_classes_vanish: a.other_boundary_classes_vanish && b.other_boundary_classes_vanish,
        notes,
    })
}

/// One line of an elliptic-surface derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step: String,
    pub value: i64,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.step, self.value)
    }
}

/// `Gr(V(n), F)` from the gluing ledger.
///
/// `V(n) − N(F)` is built inductively: start from `V(1) − N(F)` and, for each
/// further copy, glue in a collar `N − P` and another `V(1) − N(F)`. Capping
/// the last boundary with `D²×T²` closes the manifold. Returns the value and
/// the steps.
pub fn gr_elliptic_fiber(n: i64) -> Result<(i64, Vec<TraceStep>), FiberSumError> {
    if n < 1 {
        return Err(FiberSumError::BadIndex(n));
    }
    let mut trace = Vec::new();
    let mut open = v1_minus_nbhd();
    trace.push(TraceStep { step: "V(1)-N(F)".into(), value: open.fiber_gr });
    for j in 2..=n {
        let with_collar = glue(&open, &collar_minus_fiber())?;
        open = glue(&with_collar, &v1_minus_nbhd())?;
        open.name = format!("V({j})-N(F)");
        trace.push(TraceStep {
            step: format!("V({j})-N(F) = V({})-N(F) + N-P + V(1)-N(F)", j - 1),
            value: open.fiber_gr,
        });
    }
    let mut closed = glue(&open, &d2xt2())?;
    closed.name = format!("V({n})");
    trace.push(TraceStep { step: format!("V({n}) = V({n})-N(F) + D2xT2"), value: closed.fiber_gr });
    debug_assert!(closed.is_closed());
    Ok((closed.fiber_gr, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_values() {
        let pieces = base_pieces();
        let values: Vec<i64> = pieces.iter().map(|p| p.fiber_gr).collect();
        assert_eq!(values, vec![1, 1, 0, -1]);
    }

    #[test]
    fn gluing() {
        let s2xt2 = glue(&d2xt2(), &d2xt2()).unwrap();
        assert!(s2xt2.is_closed());
        assert_eq!(s2xt2.fiber_gr, 2);
        let v = glue(&v1_minus_nbhd(), &d2xt2()).unwrap();
        assert_eq!((v.boundary_count, v.fiber_gr), (0, 1));
        let k3 = glue(&v1_minus_nbhd(), &v1_minus_nbhd()).unwrap();
        assert_eq!((k3.boundary_count, k3.fiber_gr), (0, 0));
        assert_eq!(glue(&k3, &d2xt2()), Err(FiberSumError::Closed(k3.name.clone())));
    }

    #[test]
    fn elliptic_values() {
        assert_eq!(gr_elliptic_fiber(1).unwrap().0, 1);
        assert_eq!(gr_elliptic_fiber(2).unwrap().0, 0);
        let (v, trace) = gr_elliptic_fiber(3).unwrap();
        assert_eq!(v, -1);
        assert_eq!(trace.iter().map(|s| s.value).collect::<Vec<_>>(), vec![0, -1, -2, -1]);
        assert_eq!(gr_elliptic_fiber(0), Err(FiberSumError::BadIndex(0)));
    }
}
