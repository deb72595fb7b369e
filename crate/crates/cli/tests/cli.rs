use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn iim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iim"))
        .args(args)
        .env_remove("IIM_BUDGET")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn untimed(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v["wall_time_ms"] = 0.into();
    v
}

#[test]
fn generate_trivial_seeds() {
    let o = iim(&["generate", "--seed", "K1", "--steps", "1", "--choices", "L1=0x0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2 1\n0 1\n");
    let o = iim(&["generate", "--seed", "K1", "--steps", "1", "--choices", "L1=0x1"]);
    assert_eq!(stdout(&o), "2 0\n");
}

#[test]
fn generate_random_is_reproducible() {
    let args = ["generate", "--seed", "P4", "--steps", "1", "--random", "0.5", "--rng", "42"];
    let a = iim(&args);
    let b = iim(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("8 "));
}

#[test]
fn generate_writes_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = iim(&[
        "generate", "--seed", "K1", "--steps", "2", "--choices", "L1=0x0;L2=0x1", "--out", out, "--name", "k1_l2",
    ]);
    assert!(o.status.success());
    for ext in ["edges", "dot", "json"] {
        let name = format!("k1_l2.{ext}");
        assert_eq!(fs::read_to_string(dir.path().join(&name)).unwrap(), golden(&name), "{name}");
    }
}

#[test]
fn verify_reports_match_golden() {
    let o = iim(&["verify", "diameter", "--seed", "P4", "--steps", "1", "--workers", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(untimed(&stdout(&o)), untimed(&golden("verify_diameter_P4_l1.json")));

    for workers in ["1", "4"] {
        let o = iim(&["verify", "domination-kn", "--seed", "K2", "--steps", "2", "--workers", workers]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(untimed(&stdout(&o)), untimed(&golden("verify_domination_kn_K2_l2.json")));
    }
}

#[test]
fn verify_small_theorems_pass() {
    for (id, seed, steps) in [
        ("spectral-gap", "K1", "4"),
        ("clique-bound", "K1", "4"),
        ("triple-exists", "K1", "4"),
        ("coloring-extension", "2K1", "3"),
        ("domination-general", "C5", "1"),
        ("ham-partition", "C4", "2"),
    ] {
        let o = iim(&["verify", id, "--seed", seed, "--steps", steps]);
        assert_eq!(o.status.code(), Some(0), "{id}");
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["passed"], Value::Bool(true), "{id}");
    }
    let o = iim(&["verify", "spectral-gap", "--seed", "K1", "--steps", "4"]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["min_observed"].as_f64().unwrap() >= 1.0 / 15.0 - 1e-9);
}

#[test]
fn violations_exit_one_with_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = iim(&["verify", "triple-exists", "--seed", "K1", "--steps", "3", "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    let witnesses = fs::read_to_string(dir.path().join("triple-exists_K1_l3.witnesses.txt")).unwrap();
    assert!(witnesses.starts_with("L1=0x0;L2=0x0;L3=0x0\t"));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("triple-exists_K1_l3.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
    assert!(report["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn usage_and_budget_errors_exit_two() {
    assert_eq!(iim(&["verify", "nope", "--seed", "K1", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(iim(&["verify", "spectral-gap", "--seed", "K1", "--steps", "6"]).status.code(), Some(2));
    assert_eq!(iim(&["verify", "diameter", "--seed", "K9", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(
        iim(&["verify", "diameter-corollary", "--seed", "P4", "--steps", "3", "--samples", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(iim(&["verify", "mixing-lemma", "--seed", "C5", "--steps", "1"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_iim"))
        .args(["verify", "diameter", "--seed", "P4", "--steps", "1"])
        .env("IIM_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget is 3"));
}

#[test]
fn sampled_verification_is_reproducible() {
    let args = [
        "verify", "diameter-corollary", "--seed", "C5", "--steps", "3", "--samples", "40", "--rng", "9",
    ];
    let a = iim(&args);
    let b = iim(&[&args[..], &["--workers", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(untimed(&stdout(&a)), untimed(&stdout(&b)));
}

#[test]
fn analyze_tables() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/p4.edges");
    let o = iim(&["analyze", p4.to_str().unwrap()]);
    let got: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: Value = serde_json::from_str(&golden("analyze_p4.json")).unwrap();
    for key in ["n", "m", "isolated", "diameter", "dom", "omega", "chi"] {
        assert_eq!(got[key], want[key], "{key}");
    }
    assert!((got["gap"].as_f64().unwrap() - want["gap"].as_f64().unwrap()).abs() < 1e-9);
    let csv = stdout(&iim(&["analyze", p4.to_str().unwrap(), "--format", "csv"]));
    assert_eq!(csv.lines().next(), golden("analyze_p4.csv").lines().next());

    let k4 = dir.path().join("k4.edges");
    fs::write(&k4, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let t: Value = serde_json::from_str(&stdout(&iim(&["analyze", k4.to_str().unwrap()]))).unwrap();
    assert_eq!((t["diameter"].as_u64(), t["dom"].as_u64()), (Some(1), Some(1)));
    assert_eq!((t["omega"].as_u64(), t["chi"].as_u64()), (Some(4), Some(4)));
    assert!((t["gap"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);

    let two = dir.path().join("two.edges");
    fs::write(&two, "2 0\n").unwrap();
    let t: Value = serde_json::from_str(&stdout(&iim(&["analyze", two.to_str().unwrap()]))).unwrap();
    assert_eq!(t["gap"], "skipped(isolated)");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.edges");
    fs::write(&bad, "3 2\n0 1\n1 7\n").unwrap();
    let o = iim(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}
