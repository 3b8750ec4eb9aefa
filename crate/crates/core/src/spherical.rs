//! The spherical invariant `Gr_s(A)`: counts of disjoint unions of spheres
//! in class `A` through `k` generic points, built from connected-sphere
//! counts `N(B)` stored on the model.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::invariants::genus_embedded;
use crate::lattice::{HClass, LatticeError};
use crate::model::ManifoldModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SphericalError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("number of components p = {p} must satisfy 1 <= p <= c₁(A) = {c1}")]
    PointSplit { p: i64, c1: i64 },
    #[error("{0} has no sphere_table entry")]
    MissingCount(String),
    #[error("integer overflow while summing sphere counts")]
    Overflow,
}

/// A disjoint union of spheres in the classes `parts` through `k` points,
/// with `kᵢ = c₁(Bᵢ) − 1` points on the component in class `Bᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereConfig {
    /// Sorted; repeated entries are parallel or coinciding components.
    pub parts: Vec<HClass>,
    pub budgets: Vec<i64>,
    pub k: i64,
    pub p: i64,
    /// Ways to distribute the k labeled points over the components.
    pub assignment_factor: u64,
    /// Set when a class with `N > 1` is repeated: the factor is then a
    /// convention rather than settled combinatorics.
    pub warning: bool,
}

impl fmt::Display for SphereConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}} (k,p) = ({},{})", parts.join(", "), self.k, self.p)
    }
}

/// `k = c₁(A) − p`, the number of points when the curve has `p` components.
pub fn k_for(a: &HClass, p: i64) -> Result<i64, SphericalError> {
    let c1 = a.c1();
    if p < 1 || p > c1 {
        return Err(SphericalError::PointSplit { p, c1 });
    }
    Ok(c1 - p)
}

/// All multisets of sphere_table classes summing to `a` in which every part
/// has `c₁ ≥ 1`, distinct parts are orthogonal, and only stored exceptional
/// or square-zero classes repeat. Empty when `c₁(a) < 1`.
pub fn enumerate_sphere_configs(model: &ManifoldModel, a: &HClass) -> Result<Vec<SphereConfig>, SphericalError> {
    model.lattice().check_member(a)?;
    let c1 = a.c1();
    if c1 < 1 {
        return Ok(Vec::new());
    }
    let keys: Vec<HClass> = model.sphere_table().keys().filter(|b| b.c1() >= 1).cloned().collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, i64)> = Vec::new();
    search(model, &keys, 0, a.clone(), c1, &mut chosen, &mut |chosen| {
        out.push(build_config(model, &keys, chosen, c1));
    });
    out.sort_by(|x, y| x.parts.cmp(&y.parts));
    Ok(out)
}

fn search(
    model: &ManifoldModel,
    keys: &[HClass],
    i: usize,
    rest: HClass,
    c1_left: i64,
    chosen: &mut Vec<(usize, i64)>,
    visit: &mut impl FnMut(&[(usize, i64)]),
) {
    if rest.is_zero() && c1_left == 0 {
        if !chosen.is_empty() {
            visit(chosen);
        }
        return;
    }
    if i == keys.len() || c1_left <= 0 {
        return;
    }
    let b = &keys[i];
    let compatible = chosen.iter().all(|&(j, _)| keys[j].dot(b) == 0);
    let max_copies = if model.is_exceptional(b) || b.square() == 0 { c1_left / b.c1() } else { 1 };
    if compatible {
        let mut remaining = rest.clone();
        for r in 1..=max_copies {
            remaining = &remaining - b;
            chosen.push((i, r));
            search(model, keys, i + 1, remaining.clone(), c1_left - r * b.c1(), chosen, visit);
            chosen.pop();
        }
    }
    search(model, keys, i + 1, rest, c1_left, chosen, visit);
}

fn factorial(n: i64) -> BigUint {
    (1..=n.max(0) as u64).fold(BigUint::one(), |acc, i| acc * i)
}

fn build_config(model: &ManifoldModel, keys: &[HClass], chosen: &[(usize, i64)], c1: i64) -> SphereConfig {
    let mut parts = Vec::new();
    let mut budgets = Vec::new();
    let mut denominator = BigUint::one();
    let mut warning = false;
    for &(i, r) in chosen {
        let b = &keys[i];
        let budget = b.c1() - 1;
        for _ in 0..r {
            parts.push(b.clone());
            budgets.push(budget);
            denominator *= factorial(budget);
        }
        if budget >= 1 {
            denominator *= factorial(r);
        }
        if r >= 2 && model.sphere_table()[b] > 1 {
            warning = true;
        }
    }
    let p = parts.len() as i64;
    let k = c1 - p;
    debug_assert_eq!(budgets.iter().sum::<i64>(), k);
    let factor = factorial(k) / denominator;
    SphereConfig {
        parts,
        budgets,
        k,
        p,
        assignment_factor: factor.to_u64().unwrap_or(u64::MAX),
        warning,
    }
}

/// `Gr_s(A) = Σ_configs ∏ N(Bᵢ) × assignment_factor`.
pub fn gr_s(model: &ManifoldModel, a: &HClass) -> Result<i64, SphericalError> {
    let configs = enumerate_sphere_configs(model, a)?;
    gr_s_of(model, &configs)
}

/// Sum over an explicit list of configurations.
pub fn gr_s_of(model: &ManifoldModel, configs: &[SphereConfig]) -> Result<i64, SphericalError> {
    let mut total = 0i64;
    for cfg in configs {
        let mut term = i64::try_from(cfg.assignment_factor).map_err(|_| SphericalError::Overflow)?;
        for b in &cfg.parts {
            let n = *model.sphere_table().get(b).ok_or_else(|| SphericalError::MissingCount(b.to_string()))?;
            let n = i64::try_from(n).map_err(|_| SphericalError::Overflow)?;
            term = term.checked_mul(n).ok_or(SphericalError::Overflow)?;
        }
        total = total.checked_add(term).ok_or(SphericalError::Overflow)?;
    }
    Ok(total)
}

/// An embedded sphere of square at least −1 counts once: returns `Some(1)`
/// when `A` has embedded genus 0, `A·A ≥ −1`, and a positive sphere_table
/// entry marks it representable.
pub fn embedded_sphere_rule(model: &ManifoldModel, a: &HClass) -> Option<i64> {
    let marked = model.sphere_table().get(a).is_some_and(|&n| n >= 1);
    (genus_embedded(a) == 0 && a.square() >= -1 && marked).then_some(1)
}

/// Per-class multiplicity of a configuration, for display.
pub fn multiplicities(cfg: &SphereConfig) -> BTreeMap<HClass, usize> {
    let mut m = BTreeMap::new();
    for p in &cfg.parts {
        *m.entry(p.clone()).or_insert(0) += 1;
    }
    m
}
