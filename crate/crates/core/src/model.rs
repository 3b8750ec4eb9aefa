//! A manifold model: a lattice together with the stored exceptional classes
//! and the count tables consulted by the structure and spherical modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Signed;
use thiserror::Error;

use crate::lattice::{HClass, IntersectionLattice, LatticeError};
use crate::torus::TorusEntry;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("class {class} is not exceptional: E·E = {square}, c₁(E) = {c1} (need -1 and 1)")]
    NotExceptional { class: String, square: i64, c1: i64 },
    #[error("a minimal model cannot store exceptional classes")]
    MinimalWithExceptional,
    #[error("{table} key {class} has non-positive area {area}")]
    NonPositiveArea { table: &'static str, class: String, area: String },
    #[error("torus_table key {0} is not primitive")]
    NotPrimitive(String),
    #[error("torus_table key {class} has square {square}, expected 0")]
    TorusSquare { class: String, square: i64 },
    #[error("duplicate {table} entry for {class}")]
    Duplicate { table: &'static str, class: String },
}

/// Lattice plus the finite stored set ℰ and the input count tables.
///
/// ℰ is infinite for most blowups; every operation that quantifies over ℰ
/// uses the stored set as its universe.
#[derive(Debug, Clone)]
pub struct ManifoldModel {
    lattice: Arc<IntersectionLattice>,
    exceptional: Vec<HClass>,
    minimal: bool,
    gr0_table: BTreeMap<HClass, i64>,
    torus_table: BTreeMap<HClass, Vec<TorusEntry>>,
    sphere_table: BTreeMap<HClass, u64>,
}

impl ManifoldModel {
    pub fn new(lattice: Arc<IntersectionLattice>) -> Self {
        ManifoldModel {
            lattice,
            exceptional: Vec::new(),
            minimal: false,
            gr0_table: BTreeMap::new(),
            torus_table: BTreeMap::new(),
            sphere_table: BTreeMap::new(),
        }
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn name(&self) -> &str {
        self.lattice.name()
    }

    pub fn exceptional(&self) -> &[HClass] {
        &self.exceptional
    }

    pub fn is_exceptional(&self, class: &HClass) -> bool {
        self.exceptional.contains(class)
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    pub fn b2_plus(&self) -> u32 {
        self.lattice.b2_plus()
    }

    pub fn gr0_table(&self) -> &BTreeMap<HClass, i64> {
        &self.gr0_table
    }

    pub fn torus_table(&self) -> &BTreeMap<HClass, Vec<TorusEntry>> {
        &self.torus_table
    }

    pub fn sphere_table(&self) -> &BTreeMap<HClass, u64> {
        &self.sphere_table
    }

    /// Adds `class` to ℰ. Rejects classes that are not numerically
    /// exceptional and any addition to a minimal model.
    pub fn with_exceptional(mut self, class: HClass) -> Result<Self, ModelError> {
        self.lattice.check_member(&class)?;
        if self.minimal {
            return Err(ModelError::MinimalWithExceptional);
        }
        let (square, c1) = (class.square(), class.c1());
        if square != -1 || c1 != 1 {
            return Err(ModelError::NotExceptional { class: class.to_string(), square, c1 });
        }
        if !self.exceptional.contains(&class) {
            self.exceptional.push(class);
        }
        Ok(self)
    }

    pub fn with_minimal(mut self, minimal: bool) -> Result<Self, ModelError> {
        if minimal && !self.exceptional.is_empty() {
            return Err(ModelError::MinimalWithExceptional);
        }
        self.minimal = minimal;
        Ok(self)
    }

    pub fn with_gr0(mut self, class: HClass, value: i64) -> Result<Self, ModelError> {
        self.check_key("gr0_table", &class)?;
        if self.gr0_table.insert(class.clone(), value).is_some() {
            return Err(ModelError::Duplicate { table: "gr0_table", class: class.to_string() });
        }
        Ok(self)
    }

    /// Appends one torus to the list stored under the primitive class `class`.
    pub fn with_torus(mut self, class: HClass, entry: TorusEntry) -> Result<Self, ModelError> {
        self.check_key("torus_table", &class)?;
        if !class.is_primitive() {
            return Err(ModelError::NotPrimitive(class.to_string()));
        }
        let square = class.square();
        if square != 0 {
            return Err(ModelError::TorusSquare { class: class.to_string(), square });
        }
        self.torus_table.entry(class).or_default().push(entry);
        Ok(self)
    }

    /// Registers a ray class with no tori at all (its count is 1 at k = 0 and
    /// 0 beyond), which differs from an absent entry.
    pub fn with_empty_torus_list(mut self, class: HClass) -> Result<Self, ModelError> {
        self.check_key("torus_table", &class)?;
        if !class.is_primitive() {
            return Err(ModelError::NotPrimitive(class.to_string()));
        }
        let square = class.square();
        if square != 0 {
            return Err(ModelError::TorusSquare { class: class.to_string(), square });
        }
        self.torus_table.entry(class).or_default();
        Ok(self)
    }

    pub fn with_sphere(mut self, class: HClass, count: u64) -> Result<Self, ModelError> {
        self.check_key("sphere_table", &class)?;
        if self.sphere_table.insert(class.clone(), count).is_some() {
            return Err(ModelError::Duplicate { table: "sphere_table", class: class.to_string() });
        }
        Ok(self)
    }

    fn check_key(&self, table: &'static str, class: &HClass) -> Result<(), ModelError> {
        self.lattice.check_member(class)?;
        let area = class.omega();
        if !area.is_positive() {
            return Err(ModelError::NonPositiveArea {
                table,
                class: class.to_string(),
                area: area.to_string(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusLabel;
    use num_rational::Rational64;

    fn blowup1() -> Arc<IntersectionLattice> {
        IntersectionLattice::new(
            "b1",
            vec!["L".into(), "E1".into()],
            vec![vec![1, 0], vec![0, -1]],
            vec![-3, 1],
            vec![Rational64::from_integer(3), Rational64::from_integer(1)],
            None,
        )
        .unwrap()
    }

    #[test]
    fn exceptional_validation() {
        let lat = blowup1();
        let e = HClass::basis(&lat, 1);
        let l = HClass::basis(&lat, 0);
        let m = ManifoldModel::new(lat.clone()).with_exceptional(e.clone()).unwrap();
        assert!(m.is_exceptional(&e));
        assert!(matches!(
            ManifoldModel::new(lat.clone()).with_exceptional(l),
            Err(ModelError::NotExceptional { .. })
        ));
        assert_eq!(m.with_minimal(true).unwrap_err(), ModelError::MinimalWithExceptional);
    }

    #[test]
    fn table_keys_need_positive_area() {
        let lat = blowup1();
        let neg = HClass::new(&lat, vec![0, -1]).unwrap();
        assert!(matches!(
            ManifoldModel::new(lat.clone()).with_sphere(neg, 1),
            Err(ModelError::NonPositiveArea { .. })
        ));
        let fiber = HClass::new(&lat, vec![1, -1]).unwrap();
        let m = ManifoldModel::new(lat.clone())
            .with_torus(fiber.clone(), TorusEntry::new(TorusLabel::plus(0), 1))
            .unwrap();
        assert_eq!(m.torus_table()[&fiber].len(), 1);
        let doubled = fiber.scale(2);
        assert!(matches!(
            ManifoldModel::new(lat).with_torus(doubled, TorusEntry::new(TorusLabel::plus(0), 1)),
            Err(ModelError::NotPrimitive(_))
        ));
    }
}
