use std::path::PathBuf;

use gromov::loader::load_model_file;
use gromov::{parse_class, structure};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

#[test]
fn sample_model_loads() {
    let m = load_model_file(&data("blowup.json")).unwrap();
    assert_eq!(m.name(), "blowup");
    assert_eq!(m.lattice().canonical_coords(), &[-3, 1]);
    assert_eq!(m.b2_plus(), 1);
    let l = parse_class(m.lattice(), "L").unwrap();
    assert_eq!(structure::gromov_via_decompositions(&m, &l).unwrap(), 1);
}

#[test]
fn invalid_model_reports_line_and_path() {
    let err = load_model_file(&data("bad_sphere.json")).unwrap_err();
    assert_eq!(err.line, Some(10));
    assert_eq!(err.path, "sphere_table[1].class");
}

#[test]
fn missing_torus_entry_is_unknown_gr0() {
    let m = load_model_file(&data("no_torus.json")).unwrap();
    let a = parse_class(m.lattice(), "2A1").unwrap();
    assert!(matches!(
        structure::gromov_via_decompositions(&m, &a),
        Err(structure::StructureError::UnknownGr0 { .. })
    ));
}
