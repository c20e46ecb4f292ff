use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wh_core::exactmath::Field;
use wh_core::groupoid::cyclic_group;
use wh_core::instance::WeakHopfFile;
use wh_core::walg::groupoid_algebra;

fn wh(args: &[&str], path: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wh"));
    cmd.args(args).env("WH_COLOR", "0");
    if let Some(p) = path {
        cmd.arg(p);
    }
    cmd.output().unwrap()
}

fn builtin(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let out = wh(&["builtin", name, "--out"], Some(&path));
    assert!(out.status.success());
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_accepts_valid_and_rejects_invalid_instances() {
    let dir = tempfile::tempdir().unwrap();
    let ok = wh(&["validate"], Some(&builtin(dir.path(), "i2-swap")));
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("validate: PASS"));
    let bad = wh(&["validate"], Some(&builtin(dir.path(), "ex2.8")));
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert!(text.contains("[FAIL] ii_multiplicative"));
    assert!(text.contains("component_decomposition (informational)"));
}

#[test]
fn malformed_input_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"name\": 3}").unwrap();
    for cmd in ["validate", "verify", "hopf-check"] {
        let out = wh(&[cmd], Some(&path));
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
    let missing = wh(&["validate"], Some(&dir.path().join("absent.json")));
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn unknown_claim_prints_usage_and_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = builtin(dir.path(), "z2-trivial");
    let out = wh(&["verify", "--claim", "thm9.9"], Some(&path));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown claim `thm9.9`"));
    assert!(err.contains("Usage"));
}

#[test]
fn verify_exit_code_follows_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = builtin(dir.path(), "i2-swap");
    let holds = wh(&["verify", "--claim", "thm2.2"], Some(&path));
    assert_eq!(holds.status.code(), Some(0));
    assert!(stdout(&holds).contains("thm2.2: HOLDS"));
    let fails = wh(&["verify", "--claim", "prop2.5"], Some(&path));
    assert_eq!(fails.status.code(), Some(1));
    assert!(stdout(&fails).contains("[FAIL] left_annihilates_a2"));
    let target = wh(&["verify", "--claim", "thm2.2", "--reading", "target"], Some(&path));
    assert_eq!(target.status.code(), Some(1));
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = builtin(dir.path(), "i2-swap");
    let mut reports = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("r{i}.json"));
        let o = wh(&["verify", "--json", out.to_str().unwrap()], Some(&path));
        assert_eq!(o.status.code(), Some(1));
        reports.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let v: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(v["instance"]["name"], "i2-swap");
    assert_eq!(v["claims"].as_array().unwrap().len(), 7);
}

#[test]
fn builtin_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let first = builtin(dir.path(), "ex2.8-gf2");
    let printed = wh(&["builtin", "ex2.8-gf2"], None);
    assert_eq!(printed.stdout, std::fs::read(&first).unwrap());
    let parsed = wh_core::instance::Instance::parse_json(&stdout(&printed)).unwrap();
    assert_eq!(parsed.to_json(), stdout(&printed));
    let unknown = wh(&["builtin", "nope"], None);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn hopf_check_handles_instances_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let inst = wh(&["hopf-check"], Some(&builtin(dir.path(), "i2-swap")));
    assert_eq!(inst.status.code(), Some(0));
    assert!(stdout(&inst).contains("KG*: HOLDS"));

    let kg = groupoid_algebra(&cyclic_group(2).unwrap(), Field::Rational);
    let mut file = WeakHopfFile::from_weak_hopf("KZ2", &kg).unwrap();
    let tables = dir.path().join("kz2.json");
    std::fs::write(&tables, serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(wh(&["hopf-check"], Some(&tables)).status.code(), Some(0));

    file.counit.clear();
    std::fs::write(&tables, serde_json::to_string(&file).unwrap()).unwrap();
    let broken = wh(&["hopf-check"], Some(&tables));
    assert_eq!(broken.status.code(), Some(1));
    assert!(stdout(&broken).contains("hopf-check: FAIL"));
}

#[test]
fn color_is_controlled_by_wh_color() {
    let dir = tempfile::tempdir().unwrap();
    let path = builtin(dir.path(), "z2-trivial");
    let plain = wh(&["verify", "--claim", "thm2.2"], Some(&path));
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = Command::new(env!("CARGO_BIN_EXE_wh"))
        .args(["verify", "--claim", "thm2.2"])
        .arg(&path)
        .env("WH_COLOR", "1")
        .output()
        .unwrap();
    assert!(stdout(&colored).contains("\x1b[32mHOLDS\x1b[0m"));
}
