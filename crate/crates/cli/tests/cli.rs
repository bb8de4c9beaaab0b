use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_sym4_v4_is_large() {
    let sym4 = data("sym4.grp");
    let out = run(&[
        "analyze",
        sym4.to_str().unwrap(),
        "--p",
        "2",
        "--subgroup",
        "V4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[PASS] criterion (iv')"));
    assert!(!text.contains("FAIL"));
    assert!(text.contains("essential subgroups: <(1 2)(3 4), (1 3)(2 4)> (order 4)"));
}

#[test]
fn analyze_sym4_at_three_has_no_essentials() {
    let sym4 = data("sym4.grp");
    let out = run(&["--json", "analyze", sym4.to_str().unwrap(), "--p", "3"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["data"]["sylow_order"], 3);
    assert_eq!(doc["data"]["essentials"].as_array().unwrap().len(), 0);
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = std::env::temp_dir().join(format!("fusionloc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.grp");
    std::fs::write(&path, "").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn locality_centric_verifies_and_factorizes() {
    let sym4 = data("sym4.grp");
    let out = run(&[
        "locality",
        sym4.to_str().unwrap(),
        "--objects",
        "centric",
        "--verify",
        "--factorize",
        "(1 2 3)",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("seed 0x5eed"));
    assert!(text.contains("[PASS] locality axioms"));
    assert!(text.contains("(1 2 3) ∈ N_L(<(1 2)(3 4), (1 3)(2 4)> (order 4))"));
}

#[test]
fn locality_seed_objects() {
    let sym4 = data("sym4.grp");
    let out = run(&[
        "--json",
        "locality",
        sym4.to_str().unwrap(),
        "--objects",
        "seed=V4",
        "--verify",
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["status"], "PASS");
    assert_eq!(doc["data"]["object_count"], 2);
}

#[test]
fn invalid_preset_is_a_usage_error() {
    let sym4 = data("sym4.grp");
    let out = run(&[
        "locality",
        sym4.to_str().unwrap(),
        "--objects",
        "everything",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown object set"));
}

#[test]
fn g2_passes_and_serializes() {
    let out = run(&["--json", "g2"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["data"]["tilde_c_order"], 1152);
    assert_eq!(doc["data"]["q8_central_product"]["involutions"], 19);
    assert_eq!(doc["report"]["status"], "PASS");
    let report: fusionloc::report::ReportNode =
        serde_json::from_value(doc["report"].clone()).unwrap();
    assert!(report.passed());
}

#[test]
fn g2_missing_ingest_file_is_skipped() {
    let out = run(&["g2", "--ingest", "/nonexistent/autg23.grp"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[SKIPPED] Aut(G₂(3)) ingest"));
}
