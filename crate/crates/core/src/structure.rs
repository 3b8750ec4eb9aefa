//! Curve configurations, the equality chains they must satisfy, and
//! decompositions `A = ΣBⱼ` with `Gr(A) = Σ_D ∏ Gr₀(Bⱼ)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::invariants::{self, k, NegKind};
use crate::lattice::{HClass, LatticeError};
use crate::model::ManifoldModel;
use crate::report::Report;
use crate::torus::{self, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("configuration has no components")]
    EmptyConfiguration,
    #[error("component {class}: {reason}")]
    BadComponent { class: String, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("candidate {class} has non-positive area {area}")]
    NonPositiveArea { class: String, area: String },
    #[error("unknown Gr₀({class}): {reason}")]
    UnknownGr0 { class: String, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("integer overflow while combining invariants")]
    Overflow,
}

/// An `m`-fold covered curve of genus `g` with simple class `cls`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub cls: HClass,
    pub mult: i64,
    pub genus: i64,
}

impl Component {
    pub fn new(cls: HClass, mult: i64, genus: i64) -> Result<Self, StructureError> {
        if mult < 1 {
            return Err(StructureError::BadComponent {
                class: cls.to_string(),
                reason: format!("multiplicity must be positive, got {mult}"),
            });
        }
        if genus < 0 {
            return Err(StructureError::BadComponent {
                class: cls.to_string(),
                reason: format!("genus must be non-negative, got {genus}"),
            });
        }
        Ok(Component { cls, mult, genus })
    }

    /// `mult · cls`.
    pub fn class(&self) -> HClass {
        self.cls.scale(self.mult)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, m={}, g={})", self.cls, self.mult, self.genus)
    }
}

/// A nonempty list of components; the total class is always recomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    components: Vec<Component>,
}

impl Configuration {
    pub fn new(components: Vec<Component>) -> Result<Self, StructureError> {
        let first = components.first().ok_or(StructureError::EmptyConfiguration)?;
        for c in &components[1..] {
            first.cls.pair(&c.cls)?;
        }
        Ok(Configuration { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn total(&self) -> HClass {
        let mut total = HClass::zero(self.components[0].cls.lattice());
        for c in &self.components {
            total = &total + &c.class();
        }
        total
    }
}

/// Parts `B₁ … B_ℓ` of a decomposition, sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decomposition {
    pub parts: Vec<HClass>,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn pairs_failing(comps: &[Component]) -> Vec<HClass> {
    let mut bad = Vec::new();
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            if a.cls.dot(&b.cls) != 0 {
                bad.push(a.cls.clone());
                bad.push(b.cls.clone());
            }
        }
    }
    bad
}

fn push_disjoint(report: &mut Report, comps: &[Component]) {
    let bad = pairs_failing(comps);
    let detail = if bad.is_empty() {
        String::new()
    } else {
        let products: Vec<String> = bad
            .chunks(2)
            .map(|p| format!("({})·({}) = {}", p[0], p[1], p[0].dot(&p[1])))
            .collect();
        format!("components intersect: {}", products.join(", "))
    };
    report.push("disjoint", bad.is_empty(), bad, detail);
}

/// The per-component clauses shared by both verifiers, for `comps` with
/// total class `total`.
fn push_component_clauses(report: &mut Report, comps: &[Component], total: &HClass) {
    let multiple: Vec<&Component> = comps
        .iter()
        .filter(|c| c.mult != 1 && !(c.genus == 1 && c.cls.square() == 0))
        .collect();
    report.push(
        "multiplicity",
        multiple.is_empty(),
        multiple.iter().map(|c| c.cls.clone()).collect(),
        if multiple.is_empty() {
            String::new()
        } else {
            let d: Vec<String> = multiple.iter().map(|c| c.to_string()).collect();
            format!("multiple covers only allowed for square-zero tori: {}", d.join(", "))
        },
    );

    let negative: Vec<HClass> = comps
        .iter()
        .filter(|c| c.cls.square() < 0)
        .filter(|c| {
            invariants::classify_negative(&c.cls).map(|v| v.kind) != Ok(NegKind::ExceptionalSphere)
        })
        .map(|c| c.cls.clone())
        .collect();
    let detail = if negative.is_empty() {
        String::new()
    } else {
        "negative-square component is not an exceptional sphere".to_string()
    };
    report.push("negative", negative.is_empty(), negative, detail);

    let ell_sum: i64 = comps.iter().map(|c| invariants::ell_g(&c.cls, c.genus)).sum();
    let k_total = k(total);
    report.push(
        "genus_sum",
        ell_sum == k_total,
        vec![],
        format!("Σ ℓ_g = {ell_sum}, k(total) = {k_total}"),
    );

    let chain: Vec<&Component> = comps
        .iter()
        .filter(|c| k(&c.class()) < invariants::ell_g(&c.cls, c.genus))
        .collect();
    report.push(
        "cover_bound",
        chain.is_empty(),
        chain.iter().map(|c| c.cls.clone()).collect(),
        if chain.is_empty() {
            String::new()
        } else {
            "k(m·B) < ℓ_g(B)".to_string()
        },
    );
}

/// Checks a configuration against the conditions a good curve through
/// `points` generic points must meet. Clause ids:
///
/// * `points`: `points = k(total)`
/// * `disjoint`: components pairwise orthogonal
/// * `multiplicity`: `m = 1` unless the component is a square-zero torus
/// * `negative`: negative-square components are exceptional spheres
/// * `genus_sum`: `Σ ℓ_g(Bᵢ) = k(total)`
/// * `cover_bound`: `k(m·B) ≥ ℓ_g(B)` for each component
pub fn verify_good_configuration(
    model: &ManifoldModel,
    cfg: &Configuration,
    points: i64,
) -> Result<Report, StructureError> {
    let total = cfg.total();
    model.lattice().check_member(&total)?;
    let mut report = Report::new();
    let k_total = k(&total);
    report.push("points", points == k_total, vec![], format!("points = {points}, k(total) = {k_total}"));
    push_disjoint(&mut report, cfg.components());
    push_component_clauses(&mut report, cfg.components(), &total);
    Ok(report)
}

/// Checks the structure a curve counted by `Gr′(A)` must have: the components
/// that are multiply covered stored exceptional classes ("stripped") together
/// with a good configuration in the reduced class `B`. Clause ids, in order:
///
/// * `disjoint`: all components pairwise orthogonal
/// * `stripped_orthogonal`: stripped classes pairwise orthogonal
/// * `stripped_vs_rest`: `E·B = 0` for stripped `E`
/// * `strip_multiplicity`: multiplicity on `E` equals `m_E(A)`
/// * `coverage`: every stored `E` with `E·A < −1` is stripped
/// * `kprime`: `k′(A) = k(B)`
/// * the component clauses of [`verify_good_configuration`] on the rest
/// * `points` (only when `points` is given): `points = k′(A)`
pub fn verify_kprime_configuration(
    model: &ManifoldModel,
    cfg: &Configuration,
    points: Option<i64>,
) -> Result<Report, StructureError> {
    let total = cfg.total();
    model.lattice().check_member(&total)?;
    let (stripped, rest): (Vec<Component>, Vec<Component>) = cfg
        .components()
        .iter()
        .cloned()
        .partition(|c| c.mult >= 2 && model.is_exceptional(&c.cls));
    let mut reduced = HClass::zero(model.lattice());
    for c in &rest {
        reduced = &reduced + &c.class();
    }

    let mut report = Report::new();
    push_disjoint(&mut report, cfg.components());

    let bad = pairs_failing(&stripped);
    report.push("stripped_orthogonal", bad.is_empty(), bad, "");

    let bad: Vec<HClass> = stripped
        .iter()
        .filter(|e| e.cls.dot(&reduced) != 0)
        .map(|e| e.cls.clone())
        .collect();
    report.push("stripped_vs_rest", bad.is_empty(), bad, format!("B = {reduced}"));

    let bad: Vec<&Component> = stripped
        .iter()
        .filter(|e| invariants::m_e(model, &total, &e.cls).ok() != Some(e.mult))
        .collect();
    let detail: Vec<String> = bad
        .iter()
        .map(|e| {
            let m = invariants::m_e(model, &total, &e.cls).unwrap_or(0);
            format!("{} has multiplicity {} but m_E(A) = {}", e.cls, e.mult, m)
        })
        .collect();
    report.push(
        "strip_multiplicity",
        bad.is_empty(),
        bad.iter().map(|e| e.cls.clone()).collect(),
        detail.join("; "),
    );

    let missing: Vec<HClass> = model
        .exceptional()
        .iter()
        .filter(|e| total.dot(e) < -1 && !stripped.iter().any(|s| &s.cls == *e))
        .cloned()
        .collect();
    report.push("coverage", missing.is_empty(), missing, "");

    let kp = invariants::k_prime(model, &total);
    let kb = k(&reduced);
    report.push("kprime", kp == kb, vec![], format!("k′(A) = {kp}, k(B) = {kb}"));

    push_component_clauses(&mut report, &rest, &reduced);

    if let Some(points) = points {
        report.push("points", points == kp, vec![], format!("points = {points}, k′(A) = {kp}"));
    }
    Ok(report)
}

/// Checks the defining conditions of a decomposition of `a`: the parts sum
/// to `a`, are pairwise orthogonal, pairwise non-proportional, and have
/// non-negative square.
pub fn verify_decomposition(a: &HClass, d: &Decomposition) -> Report {
    let mut report = Report::new();
    let mut sum = HClass::zero(a.lattice());
    for p in &d.parts {
        sum = &sum + p;
    }
    report.push("nonempty", !d.parts.is_empty(), vec![], "");
    report.push("sum", &sum == a, vec![sum.clone()], format!("Σ B = {sum}"));
    let mut orth = Vec::new();
    let mut prop = Vec::new();
    for (i, p) in d.parts.iter().enumerate() {
        for q in &d.parts[i + 1..] {
            if p.dot(q) != 0 {
                orth.extend([p.clone(), q.clone()]);
            }
            if p.rationally_proportional(q) {
                prop.extend([p.clone(), q.clone()]);
            }
        }
    }
    report.push("orthogonal", orth.is_empty(), orth, "");
    report.push("non_proportional", prop.is_empty(), prop, "");
    let neg: Vec<HClass> = d.parts.iter().filter(|p| p.square() < 0).cloned().collect();
    report.push("square", neg.is_empty(), neg, "");
    report
}

/// All decompositions of `a` into parts generated by `candidates`.
///
/// Every candidate needs positive area. In a minimal model with b₂⁺ > 1,
/// candidates with `k ≠ 0` are dropped first. The search runs over all
/// non-negative coefficient vectors `c` with `Σ cᵢ Cᵢ = a` (bounded through
/// the area of `a`); square-zero candidates on one ray are merged into a single
/// part. Results are deduplicated and sorted.
pub fn enumerate_decompositions(
    model: &ManifoldModel,
    a: &HClass,
    candidates: &[HClass],
) -> Result<Vec<Decomposition>, StructureError> {
    model.lattice().check_member(a)?;
    for c in candidates {
        model.lattice().check_member(c)?;
        if !c.omega().is_positive() {
            return Err(StructureError::NonPositiveArea { class: c.to_string(), area: c.omega().to_string() });
        }
    }
    let filter_k = model.minimal() && model.b2_plus() > 1;
    let cands: Vec<HClass> = candidates
        .iter()
        .filter(|c| !filter_k || k(c) == 0)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut found = BTreeSet::new();
    let mut coeffs = vec![0i64; cands.len()];
    search(&cands, 0, a.clone(), &mut coeffs, &mut |coeffs| {
        let parts = group_parts(&cands, coeffs);
        let d = Decomposition { parts };
        if verify_decomposition(a, &d).passed() {
            found.insert(d);
        }
    });
    Ok(found.into_iter().collect())
}

fn search(cands: &[HClass], i: usize, rest: HClass, coeffs: &mut [i64], visit: &mut impl FnMut(&[i64])) {
    if i == cands.len() {
        if rest.is_zero() {
            visit(coeffs);
        }
        return;
    }
    let area = rest.omega();
    if area.is_negative() {
        return;
    }
    let step = cands[i].omega();
    let max = (area / step).floor().to_integer();
    let mut remaining = rest;
    for c in 0..=max {
        coeffs[i] = c;
        search(cands, i + 1, remaining.clone(), coeffs, visit);
        remaining = &remaining - &cands[i];
    }
    coeffs[i] = 0;
}

/// Parts for a coefficient vector: square-zero candidates are summed per
/// ray; every other candidate contributes one part per unit of coefficient.
fn group_parts(cands: &[HClass], coeffs: &[i64]) -> Vec<HClass> {
    let mut rays: BTreeMap<HClass, HClass> = BTreeMap::new();
    let mut parts = Vec::new();
    for (c, &n) in cands.iter().zip(coeffs) {
        if n == 0 {
            continue;
        }
        if c.square() == 0 {
            let (ray, _) = c.primitive_part().expect("candidates have positive area");
            let add = c.scale(n);
            rays.entry(ray)
                .and_modify(|sum| *sum = &*sum + &add)
                .or_insert(add);
        } else {
            parts.extend(std::iter::repeat_n(c.clone(), n as usize));
        }
    }
    parts.extend(rays.into_values());
    parts.sort();
    parts
}

/// `Gr₀(B)` for a part: table lookup for positive square, the torus count
/// for a class `d·P` on a square-zero ray.
pub fn gr0_of(model: &ManifoldModel, part: &HClass) -> Result<i64, StructureError> {
    let square = part.square();
    if square > 0 {
        return model.gr0_table().get(part).copied().ok_or_else(|| StructureError::UnknownGr0 {
            class: part.to_string(),
            reason: "no gr0_table entry".into(),
        });
    }
    if square < 0 {
        return Err(StructureError::UnknownGr0 {
            class: part.to_string(),
            reason: format!("negative square {square}"),
        });
    }
    let (ray, d) = part.primitive_part().ok_or_else(|| StructureError::UnknownGr0 {
        class: part.to_string(),
        reason: "zero class".into(),
    })?;
    let tori = model.torus_table().get(&ray).ok_or_else(|| StructureError::UnknownGr0 {
        class: part.to_string(),
        reason: format!("no torus_table entry for the ray of {ray}"),
    })?;
    Ok(torus::gr_torus_class(tori, d as usize)?)
}

/// Each decomposition of `a` (over the model's table classes) with its
/// product `∏ Gr₀(Bⱼ)`.
pub fn gromov_breakdown(model: &ManifoldModel, a: &HClass) -> Result<Vec<(Decomposition, i64)>, StructureError> {
    let candidates: Vec<HClass> = model
        .gr0_table()
        .keys()
        .chain(model.torus_table().keys())
        .cloned()
        .collect();
    let mut out = Vec::new();
    for d in enumerate_decompositions(model, a, &candidates)? {
        let mut product = 1i64;
        for p in &d.parts {
            product = product.checked_mul(gr0_of(model, p)?).ok_or(StructureError::Overflow)?;
        }
        out.push((d, product));
    }
    Ok(out)
}

/// `Gr(A) = Σ_D ∏ Gr₀(Bⱼ)` with candidates taken from the gr0 and torus
/// tables. The zero class counts the empty curve: `Gr(0) = 1`.
pub fn gromov_via_decompositions(model: &ManifoldModel, a: &HClass) -> Result<i64, StructureError> {
    model.lattice().check_member(a)?;
    if a.is_zero() {
        return Ok(1);
    }
    gromov_breakdown(model, a)?
        .iter()
        .try_fold(0i64, |acc, (_, v)| acc.checked_add(*v))
        .ok_or(StructureError::Overflow)
}

/// Checks a table of invariants of a minimal model with b₂⁺ > 1 against the
/// constraints such invariants must satisfy. Clause ids:
///
/// * `zero_dimension`: `Gr(A) ≠ 0` only if `k(A) = 0`
/// * `canonical_unit`: `|Gr(K)| = 1` when `K` is in the table
/// * `duality`: `|Gr(A)| = |Gr(K − A)|` when both are in the table
/// * `square_zero`: if `K² = 0`, `Gr(A) ≠ 0` only if `A² = 0`
pub fn check_kmin_constraints(
    model: &ManifoldModel,
    table: &BTreeMap<HClass, i64>,
) -> Result<Report, StructureError> {
    if !model.minimal() || model.b2_plus() <= 1 {
        return Err(StructureError::Precondition(format!(
            "needs a minimal model with b₂⁺ > 1 (minimal = {}, b₂⁺ = {})",
            model.minimal(),
            model.b2_plus()
        )));
    }
    for a in table.keys() {
        model.lattice().check_member(a)?;
    }
    let canonical = HClass::canonical(model.lattice());
    let mut report = Report::new();

    let bad: Vec<HClass> = table.iter().filter(|(a, &g)| g != 0 && k(a) != 0).map(|(a, _)| a.clone()).collect();
    let detail: Vec<String> = bad.iter().map(|a| format!("k({a}) = {}, Gr = {}", k(a), table[a])).collect();
    report.push("zero_dimension", bad.is_empty(), bad, detail.join("; "));

    match table.get(&canonical) {
        Some(&g) => report.push("canonical_unit", g.abs() == 1, vec![canonical.clone()], format!("Gr(K) = {g}")),
        None => report.push("canonical_unit", true, vec![], "K not in table"),
    }

    let mut bad = Vec::new();
    let mut detail = Vec::new();
    for (a, &g) in table {
        let dual = &canonical - a;
        if let Some(&h) = table.get(&dual) {
            if g.abs() != h.abs() && a <= &dual {
                detail.push(format!("Gr({a}) = {g}, Gr({dual}) = {h}"));
                bad.extend([a.clone(), dual]);
            }
        }
    }
    report.push("duality", bad.is_empty(), bad, detail.join("; "));

    let bad: Vec<HClass> = if canonical.square() == 0 {
        table.iter().filter(|(a, &g)| g != 0 && a.square() != 0).map(|(a, _)| a.clone()).collect()
    } else {
        Vec::new()
    };
    report.push("square_zero", bad.is_empty(), bad, format!("K² = {}", canonical.square()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_class;
    use crate::lattice::IntersectionLattice;
    use crate::presets;
    use num_rational::Rational64;

    fn c(model: &ManifoldModel, s: &str) -> HClass {
        parse_class(model.lattice(), s).unwrap()
    }

    fn cfg(model: &ManifoldModel, comps: &[(&str, i64, i64)]) -> Configuration {
        Configuration::new(
            comps.iter().map(|(s, m, g)| Component::new(c(model, s), *m, *g).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn good_configurations() {
        let m = presets::cp2_blowup(1);
        let r = verify_good_configuration(&m, &cfg(&m, &[("L", 1, 0), ("E1", 1, 0)]), 2).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_good_configuration(&m, &cfg(&m, &[("L", 1, 0), ("E1", 2, 0)]), 2).unwrap();
        assert!(!r.clause("multiplicity").unwrap().passed);
        let s = presets::s2xs2();
        let r = verify_good_configuration(&s, &cfg(&s, &[("A1", 1, 0), ("A1", 1, 0)]), 2).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(Configuration::new(vec![]), Err(StructureError::EmptyConfiguration));
    }

    #[test]
    fn kprime_configurations() {
        let m = presets::cp2_blowup(1);
        let r = verify_kprime_configuration(&m, &cfg(&m, &[("L", 1, 0), ("E1", 2, 0)]), Some(2)).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_kprime_configuration(&m, &cfg(&m, &[("L - E1", 1, 0), ("E1", 3, 0)]), None).unwrap();
        let d = r.clause("disjoint").unwrap();
        assert!(!d.passed);
        assert_eq!(d.witnesses, vec![c(&m, "L - E1"), c(&m, "E1")]);
        let p = presets::cp2();
        let r = verify_kprime_configuration(&p, &cfg(&p, &[("3L", 1, 1)]), Some(9)).unwrap();
        assert!(r.passed(), "{r}");
    }

    fn rank2_model(b1: i64, b2: i64) -> (ManifoldModel, HClass, HClass) {
        let lat = IntersectionLattice::new(
            "pos",
            vec!["X".into(), "Y".into()],
            vec![vec![1, 0], vec![0, 1]],
            vec![1, 1],
            vec![Rational64::from_integer(1), Rational64::from_integer(1)],
            None,
        )
        .unwrap();
        let x = HClass::basis(&lat, 0);
        let y = HClass::basis(&lat, 1);
        let m = ManifoldModel::new(lat).with_gr0(x.clone(), b1).unwrap().with_gr0(y.clone(), b2).unwrap();
        (m, x, y)
    }

    #[test]
    fn decompositions() {
        let (m, x, y) = rank2_model(1, 1);
        let a = &x + &y;
        let ds = enumerate_decompositions(&m, &a, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(ds, vec![Decomposition { parts: vec![y.clone(), x.clone()] }]);
        let ds = enumerate_decompositions(&m, &a, &[x.clone(), y.clone(), a.clone()]).unwrap();
        assert_eq!(ds.len(), 2);
        assert!(enumerate_decompositions(&m, &x.scale(3), std::slice::from_ref(&y)).unwrap().is_empty());
        assert!(matches!(
            enumerate_decompositions(&m, &a, &[-&x]),
            Err(StructureError::NonPositiveArea { .. })
        ));
        assert_eq!(gromov_via_decompositions(&m, &a).unwrap(), 1);
        let (m, x, y) = rank2_model(2, -3);
        assert_eq!(gromov_via_decompositions(&m, &(&x + &y)).unwrap(), -6);
    }

    #[test]
    fn ray_grouping() {
        let m = presets::s2xt2();
        let b = c(&m, "B");
        let ds = enumerate_decompositions(&m, &b.scale(2), std::slice::from_ref(&b)).unwrap();
        assert_eq!(ds, vec![Decomposition { parts: vec![b.scale(2)] }]);
        for k in 1..8 {
            assert_eq!(gromov_via_decompositions(&m, &b.scale(k)).unwrap(), k + 1);
        }
    }

    #[test]
    fn unknown_gr0_is_an_error() {
        let m = presets::s2xs2();
        let a = c(&m, "A1");
        let table_model = m.clone().with_gr0(a.clone(), 1).unwrap();
        assert!(matches!(
            gromov_via_decompositions(&table_model, &a),
            Err(StructureError::UnknownGr0 { .. })
        ));
    }

    #[test]
    fn kmin_checks() {
        let e3 = presets::elliptic(3);
        let table: BTreeMap<HClass, i64> = [(c(&e3, "F"), -1), (HClass::zero(e3.lattice()), 1)].into();
        assert!(check_kmin_constraints(&e3, &table).unwrap().passed());

        let p = presets::elliptic(3);
        let bad: BTreeMap<HClass, i64> = [(c(&p, "2S"), 1)].into();
        let r = check_kmin_constraints(&p, &bad).unwrap();
        assert!(!r.clause("zero_dimension").unwrap().passed);

        let e2 = presets::elliptic(2);
        let table: BTreeMap<HClass, i64> = [(c(&e2, "F"), 5), (c(&e2, "S"), 1)].into();
        let r = check_kmin_constraints(&e2, &table).unwrap();
        let sq = r.clause("square_zero").unwrap();
        assert!(!sq.passed);
        assert_eq!(sq.witnesses, vec![c(&e2, "S")]);

        assert!(matches!(
            check_kmin_constraints(&presets::cp2(), &BTreeMap::new()),
            Err(StructureError::Precondition(_))
        ));
    }
}
