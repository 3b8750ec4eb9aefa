//! Built-in manifold models.
//!
//! | name            | basis         | form                 | K               |
//! |-----------------|---------------|----------------------|-----------------|
//! | `cp2`           | L             | (1)                  | −3L             |
//! | `cp2_blowup(n)` | L, E1..En     | diag(1, −1, …, −1)   | −3L + ΣEᵢ       |
//! | `s2xs2`         | A1, A2        | hyperbolic           | −2A1 − 2A2      |
//! | `s2xt2`         | S, B          | hyperbolic           | −2B             |
//! | `elliptic(n)`   | F, S          | [[0,1],[1,−n]]       | (n−2)F          |
//!
//! Elliptic models cover only the sublattice spanned by the fiber and a
//! section; b₂⁺ = 2n − 1 is supplied as an override.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use thiserror::Error;

use crate::lattice::{HClass, IntersectionLattice};
use crate::model::ManifoldModel;
use crate::torus::{self, TorusEntry, TorusLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("unknown preset `{0}` (known: cp2, cp2_blowup(n), s2xs2, s2xt2, elliptic(n))")]
    Unknown(String),
    #[error("preset `{name}` needs n >= 1, got {n}")]
    BadParameter { name: String, n: i64 },
}

/// Name and one-line description of each preset family.
pub const PRESETS: [(&str, &str); 5] = [
    ("cp2", "complex projective plane; basis L"),
    ("cp2_blowup(n)", "CP² blown up at n points; basis L, E1..En"),
    ("s2xs2", "S²×S²; basis A1, A2"),
    ("s2xt2", "S²×T²; basis S (sphere), B (torus)"),
    ("elliptic(n)", "elliptic surface V(n), fiber/section sublattice; basis F, S"),
];

/// Looks a preset up by name: `cp2`, `cp2_blowup(3)` (or `cp2_blowup:3`),
/// `s2xs2`, `s2xt2`, `elliptic(2)` (or `elliptic:2`).
pub fn preset(name: &str) -> Result<ManifoldModel, PresetError> {
    let name = name.trim();
    let (family, param) = split_param(name).ok_or_else(|| PresetError::Unknown(name.to_string()))?;
    match (family, param) {
        ("cp2", None) => Ok(cp2()),
        ("s2xs2", None) => Ok(s2xs2()),
        ("s2xt2", None) => Ok(s2xt2()),
        ("cp2_blowup", Some(n)) => {
            check_n(name, n)?;
            Ok(cp2_blowup(n as usize))
        }
        ("elliptic", Some(n)) => {
            check_n(name, n)?;
            Ok(elliptic(n as u32))
        }
        _ => Err(PresetError::Unknown(name.to_string())),
    }
}

fn check_n(name: &str, n: i64) -> Result<(), PresetError> {
    if n < 1 {
        return Err(PresetError::BadParameter { name: name.to_string(), n });
    }
    Ok(())
}

fn split_param(name: &str) -> Option<(&str, Option<i64>)> {
    if let Some(open) = name.find('(') {
        let inner = name[open + 1..].strip_suffix(')')?;
        return Some((&name[..open], Some(inner.trim().parse().ok()?)));
    }
    if let Some((family, n)) = name.split_once(':') {
        return Some((family, Some(n.trim().parse().ok()?)));
    }
    Some((name, None))
}

fn int(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn class(lat: &Arc<IntersectionLattice>, coords: Vec<i64>) -> HClass {
    HClass::new(lat, coords).expect("preset coordinates have lattice rank")
}

pub fn cp2() -> ManifoldModel {
    let lat = IntersectionLattice::new("cp2", vec!["L".into()], vec![vec![1]], vec![-3], vec![int(1)], None)
        .expect("valid preset lattice");
    let l = |d| class(&lat, vec![d]);
    ManifoldModel::new(lat.clone())
        .with_minimal(true)
        .and_then(|m| m.with_gr0(l(1), 1))
        .and_then(|m| m.with_gr0(l(2), 1))
        .and_then(|m| m.with_gr0(l(3), 1))
        .and_then(|m| m.with_sphere(l(1), 1))
        .and_then(|m| m.with_sphere(l(2), 1))
        .and_then(|m| m.with_sphere(l(3), 12))
        .expect("valid preset tables")
}

/// Area of each Eᵢ: 1 up to eight points (ω = c₁), then 3/(n+1) so that the
/// anticanonical class 3L − ΣEᵢ keeps positive area.
fn blowup_area(n: usize) -> Rational64 {
    if n <= 8 {
        int(1)
    } else {
        Rational64::new(3, n as i64 + 1)
    }
}

pub fn blowup_lattice(n: usize) -> Arc<IntersectionLattice> {
    let rank = n + 1;
    let mut symbols = vec!["L".to_string()];
    symbols.extend((1..=n).map(|i| format!("E{i}")));
    let mut gram = vec![vec![0; rank]; rank];
    gram[0][0] = 1;
    for (i, row) in gram.iter_mut().enumerate().skip(1) {
        row[i] = -1;
    }
    let mut canonical = vec![1; rank];
    canonical[0] = -3;
    let mut area = vec![blowup_area(n); rank];
    area[0] = int(3);
    IntersectionLattice::new(format!("cp2_blowup({n})"), symbols, gram, canonical, area, None)
        .expect("valid preset lattice")
}

pub fn cp2_blowup(n: usize) -> ManifoldModel {
    let lat = blowup_lattice(n);
    let rank = n + 1;
    let l = |d: i64| {
        let mut v = vec![0; rank];
        v[0] = d;
        class(&lat, v)
    };
    let mut model = ManifoldModel::new(lat.clone());
    for d in 1..=3 {
        model = model.with_gr0(l(d), 1).expect("valid preset tables");
    }
    model = model
        .with_sphere(l(1), 1)
        .and_then(|m| m.with_sphere(l(2), 1))
        .and_then(|m| m.with_sphere(l(3), 12))
        .expect("valid preset tables");
    for i in 1..=n {
        let e = HClass::basis(&lat, i);
        let line_minus = &l(1) - &e;
        model = model
            .with_exceptional(e.clone())
            .and_then(|m| m.with_sphere(e, 1))
            .and_then(|m| m.with_sphere(line_minus, 1))
            .expect("valid preset tables");
    }
    if n == 9 {
        let mut f = vec![-1; rank];
        f[0] = 3;
        model = model
            .with_torus(class(&lat, f), TorusEntry::new(TorusLabel::plus(0), 1))
            .expect("valid preset tables");
    }
    model
}

pub fn s2xs2() -> ManifoldModel {
    let lat = IntersectionLattice::new(
        "s2xs2",
        vec!["A1".into(), "A2".into()],
        vec![vec![0, 1], vec![1, 0]],
        vec![-2, -2],
        vec![int(1), int(1)],
        None,
    )
    .expect("valid preset lattice");
    ManifoldModel::new(lat.clone())
        .with_minimal(true)
        .and_then(|m| m.with_gr0(class(&lat, vec![1, 1]), 1))
        .and_then(|m| m.with_sphere(class(&lat, vec![1, 0]), 1))
        .and_then(|m| m.with_sphere(class(&lat, vec![0, 1]), 1))
        .and_then(|m| m.with_sphere(class(&lat, vec![1, 1]), 1))
        .expect("valid preset tables")
}

/// S²×T² with the product structure: the torus class B carries the two
/// (+,0) tori `{0}×T²` and `{∞}×T²`; the sphere fiber S has one sphere
/// through each point, so this model also serves as the ruled surface
/// over a torus.
pub fn s2xt2() -> ManifoldModel {
    let lat = IntersectionLattice::new(
        "s2xt2",
        vec!["S".into(), "B".into()],
        vec![vec![0, 1], vec![1, 0]],
        vec![0, -2],
        vec![int(1), int(1)],
        None,
    )
    .expect("valid preset lattice");
    let b = class(&lat, vec![0, 1]);
    let plus0 = TorusEntry::new(TorusLabel::plus(0), 1);
    ManifoldModel::new(lat.clone())
        .with_minimal(true)
        .and_then(|m| m.with_torus(b.clone(), plus0))
        .and_then(|m| m.with_torus(b, plus0))
        .and_then(|m| m.with_sphere(class(&lat, vec![1, 0]), 1))
        .expect("valid preset tables")
}

pub fn elliptic_lattice(n: u32) -> Arc<IntersectionLattice> {
    let n = i64::from(n);
    IntersectionLattice::new(
        format!("elliptic({n})"),
        vec!["F".into(), "S".into()],
        vec![vec![0, 1], vec![1, -n]],
        vec![n - 2, 0],
        vec![int(1), int(1)],
        Some((2 * n - 1) as u32),
    )
    .expect("valid preset lattice")
}

/// Torus list stored on the fiber ray: one (+,0) torus for V(1), and n − 2
/// tori of type (−,0) for n ≥ 2. Both reproduce Gr(F) = 2 − n.
pub fn elliptic_fiber_tori(n: u32) -> Vec<TorusEntry> {
    if n == 1 {
        vec![TorusEntry::new(TorusLabel::plus(0), 1)]
    } else {
        vec![TorusEntry::new(TorusLabel::minus(0), 1); (n - 2) as usize]
    }
}

pub fn elliptic(n: u32) -> ManifoldModel {
    let lat = elliptic_lattice(n);
    let f = class(&lat, vec![1, 0]);
    let mut model = ManifoldModel::new(lat.clone());
    if n == 1 {
        model = model.with_exceptional(class(&lat, vec![0, 1])).expect("section is exceptional");
    } else {
        model = model.with_minimal(true).expect("no exceptional classes");
    }
    model = model.with_empty_torus_list(f.clone()).expect("fiber has positive area");
    for entry in elliptic_fiber_tori(n) {
        model = model.with_torus(f.clone(), entry).expect("fiber is primitive");
    }
    model
}

/// Shipped invariants of the fiber multiples `jF`, `0 ≤ j ≤ max(n − 2, 1)`,
/// read off the fiber torus list. For n ≥ 2 these are the signed binomials
/// of `(1 − t)^{n−2}`, so `Gr(0) = 1`, `Gr(F) = 2 − n` and
/// `|Gr(jF)| = |Gr(K − jF)|`.
pub fn elliptic_gr_table(n: u32) -> BTreeMap<HClass, i64> {
    let lat = elliptic_lattice(n);
    let top = (n.max(3) - 2) as usize;
    let series = torus::torus_product(&elliptic_fiber_tori(n), top).expect("small binomials");
    (0..=top)
        .map(|j| (class(&lat, vec![j as i64, 0]), series.coeff(j).expect("within order")))
        .collect()
}

/// Exceptional classes `aL − Σ bᵢEᵢ` of `cp2_blowup(n)` with `a ≤ max_degree`:
/// all integer solutions of `E·E = −1`, `c₁(E) = 1` that Cremona moves reduce
/// to some `Eⱼ`. Use with [`ManifoldModel::with_exceptional`] to enlarge the
/// stored set beyond the basis classes.
pub fn blowup_exceptional_classes(lattice: &Arc<IntersectionLattice>, max_degree: i64) -> Vec<HClass> {
    let n = lattice.rank() - 1;
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(HClass::basis(lattice, i));
    }
    for a in 1..=max_degree {
        let mut b = vec![0i64; n];
        search_b(a, 0, a * a + 1, 3 * a - 1, &mut b, &mut |b| {
            if cremona_reduces(a, b) {
                let mut coords = vec![a];
                coords.extend(b.iter().map(|x| -x));
                out.push(HClass::new(lattice, coords).expect("rank matches"));
            }
        });
    }
    out.sort();
    out
}

/// Non-increasing vectors are not required here; every `b` with entries in
/// `0..=a` meeting both sums is visited once.
fn search_b(a: i64, i: usize, sq_left: i64, sum_left: i64, b: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
    if i == b.len() {
        if sq_left == 0 && sum_left == 0 {
            visit(b);
        }
        return;
    }
    let mut x = 0;
    while x <= a && x * x <= sq_left && x <= sum_left {
        b[i] = x;
        search_b(a, i + 1, sq_left - x * x, sum_left - x, b, visit);
        x += 1;
    }
    b[i] = 0;
}

fn cremona_reduces(a: i64, b: &[i64]) -> bool {
    let mut a = a;
    let mut b: Vec<i64> = b.to_vec();
    while b.len() < 3 {
        b.push(0);
    }
    loop {
        if a == 0 {
            let mut nonzero = b.iter().filter(|&&x| x != 0);
            return matches!((nonzero.next(), nonzero.next()), (Some(-1), None));
        }
        if a < 0 {
            return false;
        }
        b.sort_unstable_by(|x, y| y.cmp(x));
        let d = a - b[0] - b[1] - b[2];
        if d >= 0 {
            return false;
        }
        a += d;
        for x in b.iter_mut().take(3) {
            *x += d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_class;

    #[test]
    fn parses_names() {
        assert_eq!(preset("cp2").unwrap().lattice().rank(), 1);
        assert_eq!(preset("cp2_blowup(3)").unwrap().lattice().rank(), 4);
        assert_eq!(preset("cp2_blowup:2").unwrap().lattice().rank(), 3);
        assert_eq!(preset("elliptic(4)").unwrap().b2_plus(), 7);
        assert!(matches!(preset("cp3"), Err(PresetError::Unknown(_))));
        assert!(matches!(preset("elliptic(0)"), Err(PresetError::BadParameter { .. })));
        assert!(matches!(preset("cp2_blowup(x)"), Err(PresetError::Unknown(_))));
        assert!(matches!(preset("cp2(2)"), Err(PresetError::Unknown(_))));
    }

    #[test]
    fn preset_facts() {
        let m = s2xt2();
        let b = parse_class(m.lattice(), "B").unwrap();
        assert_eq!((b.c1(), b.square()), (0, 0));

        let m = cp2_blowup(9);
        let f = parse_class(m.lattice(), "3L - E1 - E2 - E3 - E4 - E5 - E6 - E7 - E8 - E9").unwrap();
        assert_eq!((f.c1(), f.square()), (0, 0));
        assert!(f.omega() > Rational64::from_integer(0));

        let m = s2xs2();
        let a = parse_class(m.lattice(), "A1 + A2").unwrap();
        assert_eq!(a.k_dot(), -4);

        for n in 1..6 {
            let m = elliptic(n);
            let f = parse_class(m.lattice(), "F").unwrap();
            assert_eq!(f.c1(), 0);
            assert_eq!(m.b2_plus(), 2 * n - 1);
        }
        assert_eq!(cp2_blowup(1).b2_plus(), 1);
        assert_eq!(s2xs2().b2_plus(), 1);
    }

    #[test]
    fn del_pezzo_exceptional_counts() {
        let expected = [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)];
        for (n, count) in expected {
            let lat = blowup_lattice(n);
            let classes = blowup_exceptional_classes(&lat, 6);
            assert_eq!(classes.len(), count, "n = {n}");
            for e in &classes {
                assert_eq!((e.square(), e.c1()), (-1, 1));
            }
        }
    }

    #[test]
    fn elliptic_tables() {
        for n in 1..8 {
            let table = elliptic_gr_table(n);
            let lat = elliptic_lattice(n);
            let f = HClass::basis(&lat, 0);
            assert_eq!(table[&f], 2 - n as i64);
            assert_eq!(table[&HClass::zero(&lat)], 1);
        }
    }
}
