use std::path::PathBuf;
use std::process::{Command, Output};

use cinfer_core::{BasicSet, CIStructure, JointDistribution, SetFunction};

fn catalog_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/catalog").join(name)
}

fn cinfer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cinfer")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_ci_on_example_one() {
    let ex1 = catalog_file("ex1.dist.json");
    let o = cinfer(&["check-ci", path_str(&ex1), "x _||_ y | "]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    let o = cinfer(&["check-ci", path_str(&ex1), "z _||_ u"]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn enumerate_all_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("closed.txt");
    let o = cinfer(&["enumerate", "--rules", "all", "--dump", path_str(&dump)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "18478");
    assert!(stderr(&o).contains("100%"));
    let text = std::fs::read_to_string(&dump).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 18478);
    let s = CIStructure::from_hex(BasicSet::xyzu(), lines[0]).unwrap();
    assert!(cinfer_core::inference::is_closed(&s).unwrap());
}

#[test]
fn enumerate_semigraphoids_as_json() {
    let o = cinfer(&["--json", "--threads", "2", "enumerate", "--rules", "sg"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 26424);
}

#[test]
fn closure_of_empty_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.json");
    std::fs::write(&f, r#"{"variables":["x","y","z","u"],"statements":[]}"#).unwrap();
    let o = cinfer(&["closure", path_str(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn closure_adds_consequences() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    // x ⊥ y | z and x ⊥ z give x ⊥ y and x ⊥ z | y
    std::fs::write(
        &f,
        r#"{"variables":["x","y","z","u"],"statements":[{"i":"x","j":"y","K":["z"]},{"i":"x","j":"z","K":[]}]}"#,
    )
    .unwrap();
    let o = cinfer(&["--json", "closure", "--rules", "sg", path_str(&f)]);
    let s = CIStructure::from_json(&stdout(&o)).unwrap();
    assert_eq!(s.len(), 4);
}

#[test]
fn json_outputs_round_trip() {
    let ex5 = catalog_file("ex5.dist.json");
    let p = JointDistribution::from_json(&std::fs::read_to_string(&ex5).unwrap()).unwrap();
    let o = cinfer(&["--json", "structure", path_str(&ex5)]);
    assert_eq!(CIStructure::from_json(&stdout(&o)).unwrap(), p.induced_ci_structure().unwrap());
    let o = cinfer(&["--json", "entropy", path_str(&ex5)]);
    let h = SetFunction::<f64>::from_json(&stdout(&o)).unwrap();
    let expected = p.entropy_function().unwrap();
    for (a, b) in h.values().iter().zip(expected.values()) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn ingleton_sign() {
    let ex5 = catalog_file("ex5.dist.json");
    let o = cinfer(&["ingleton", path_str(&ex5), "--xyzu", "x,y,z,u"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let value: f64 = out.lines().next().unwrap().parse().unwrap();
    assert!((16.0 * value + 0.0876256).abs() < 1e-6);
    assert_eq!(out.lines().nth(1), Some("violated"));
    let o = cinfer(&["ingleton", path_str(&ex5), "--xyzu", "x,y,z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, r#"{"variables":[{"name":"x","cardinality":2}],"density":[{"config":[0],"prob":"half"}]}"#)
        .unwrap();
    let o = cinfer(&["entropy", path_str(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("density row 0"), "{}", stderr(&o));
    let o = cinfer(&["entropy", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cinfer(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cinfer(&["verify-inequality", "7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cinfer(&["verify-paper", "--only", "EX9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_paper_single_targets() {
    for key in ["9", "h-xy", "con7", "derivations"] {
        let o = cinfer(&["verify-paper", "--only", key]);
        assert_eq!(o.status.code(), Some(0), "{key}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
    let o = cinfer(&["--json", "verify-paper", "--only", "example-five"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_inequality_samples() {
    let o = cinfer(&["verify-inequality", "5", "--samples", "25"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("25 samples"));
}

#[test]
fn irreducible_total() {
    let o = cinfer(&["irreducibles"]);
    assert!(stdout(&o).contains("92 irreducible structures in 14 types"));
}
