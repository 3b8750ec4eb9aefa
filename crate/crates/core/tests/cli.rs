//! End-to-end runs of the `gromov` binary against golden files.
//!
//! Each golden file holds the exit code, stdout and stderr of one invocation.
//! Set `GROMOV_BLESS=1` to rewrite them from the current binary.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("presets", &["presets"]),
    ("k_cp2_cubic", &["k", "--manifold", "cp2", "--class", "3L"]),
    ("k_s2xs2", &["k", "--manifold", "s2xs2", "--class", "A1", "--class", "2A1", "--class", "A1 + A2"]),
    ("k_records", &["k", "--manifold", "cp2_blowup(1)", "--class", "L + E1", "--class", "L + 2E1", "--format", "records"]),
    ("kprime", &["kprime", "--manifold", "cp2_blowup(1)", "--class", "L + 2E1"]),
    ("genus", &["genus", "--manifold", "cp2", "--class", "3L", "--genus", "0"]),
    ("dim", &["dim", "--manifold", "cp2", "--class", "3L", "--genus", "0"]),
    ("good", &["good", "--manifold", "cp2_blowup(1)", "--class", "L + 2E1", "--class", "L + E1"]),
    ("reduce", &["reduce", "--manifold", "cp2_blowup(1)", "--class", "L + 2E1"]),
    ("reduce_records", &["reduce", "--manifold", "cp2_blowup(1)", "--class", "L + 2E1", "--format", "records"]),
    ("classify_neg", &["classify-neg", "--manifold", "cp2_blowup(2)", "--class", "E1", "--class", "E1 - E2"]),
    ("cone", &["cone", "--manifold", "s2xs2", "--class", "A1", "--class", "A1 - A2"]),
    ("lightcone", &["lightcone", "--manifold", "s2xs2", "--class", "A1", "--class", "A1 + A2"]),
    ("decomp_none", &["decomp", "--manifold", "s2xs2", "--class", "2A1 + A2", "--candidates", "A1,A2,A1+A2"]),
    ("decomp_diagonal", &["decomp", "--manifold", "s2xs2", "--class", "A1 + A2", "--candidates", "A1,A2,A1+A2"]),
    ("decomp_ray", &["decomp", "--manifold", "s2xt2", "--class", "3B", "--candidates", "B,2B", "--format", "records"]),
    ("gr_cp2", &["gr", "--manifold", "cp2", "--class", "3L"]),
    ("gr_ruled", &["gr", "--manifold", "s2xt2", "--class", "3B"]),
    ("gr_tori", &["gr-tori", "--tori", "+0,+0", "--k", "5"]),
    ("gr_tori_j1", &["gr-tori", "--tori", "+0,+0,+0,-0", "--k", "2", "--format", "records"]),
    ("gr_s", &["gr-s", "--manifold", "cp2_blowup(1)", "--class", "3L + E1"]),
    ("fibersum", &["fibersum"]),
    ("fibersum_n3", &["fibersum", "--n", "3"]),
    ("verify_pass", &["verify", "--manifold", "cp2_blowup(1)", "--component", "L:1:0", "--component", "E1:1:0", "--points", "2"]),
    ("verify_kprime", &["verify", "--manifold", "cp2_blowup(1)", "--kprime", "--component", "L:1:0", "--component", "E1:2:0"]),
    ("verify_fail", &["verify", "--manifold", "cp2_blowup(1)", "--kprime", "--component", "L-E1:1:0", "--component", "E1:3:0"]),
    ("err_parse", &["k", "--manifold", "cp2", "--class", "3Q"]),
    ("err_unknown_manifold", &["k", "--manifold", "cp3", "--class", "L"]),
    ("err_missing_class", &["k", "--manifold", "cp2"]),
    ("err_lightcone_b2plus", &["lightcone", "--manifold", "elliptic(2)", "--class", "F", "--class", "S"]),
    ("model_file_gr", &["gr", "--manifold", "tests/data/blowup.json", "--class", "L", "--format", "records"]),
    ("model_file_unknown_gr0", &["gr", "--manifold", "tests/data/no_torus.json", "--class", "2A1"]),
    ("model_file_invalid", &["k", "--manifold", "tests/data/bad_sphere.json", "--class", "L"]),
];

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gromov"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn render(code: i32, stdout: &str, stderr: &str) -> String {
    format!("exit={code}\n--- stdout\n{stdout}--- stderr\n{stderr}")
}

#[test]
fn golden() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("GROMOV_BLESS").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in CASES {
        let (code, stdout, stderr) = run(args);
        let got = render(code, &stdout, &stderr);
        let path = dir.join(format!("{name}.out"));
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        if got != want {
            mismatches.push(format!("{name}:\n--- want\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).0;
    assert_eq!(code(&["k", "--manifold", "cp2", "--class", "3L"]), 0);
    assert_eq!(code(&["k", "--manifold", "cp2", "--class", "3Q"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["gr", "--manifold", "tests/data/no_torus.json", "--class", "2A1"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn error_records_are_single_lines() {
    for args in [
        &["k", "--manifold", "cp2", "--class", "3Q"][..],
        &["gr", "--manifold", "tests/data/no_torus.json", "--class", "2A1"][..],
        &["k", "--manifold", "tests/data/bad_sphere.json", "--class", "L"][..],
    ] {
        let (_, _, stderr) = run(args);
        let lines: Vec<&str> = stderr.lines().collect();
        assert_eq!(lines.len(), 1, "{stderr}");
        assert!(lines[0].starts_with("error code=") && lines[0].contains(" msg="), "{stderr}");
    }
}

#[test]
fn records_are_key_value_and_deterministic() {
    let args = ["decomp", "--manifold", "s2xs2", "--class", "2A1 + 2A2", "--candidates", "A1,A2,A1+A2", "--format", "records"];
    let first = run(&args);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
    assert_eq!(first.0, 0);
    for line in first.1.lines() {
        let (key, _) = line.split_once('=').unwrap_or_else(|| panic!("not key=value: {line}"));
        assert!(!key.is_empty() && !key.contains(' '), "{line}");
    }
}
