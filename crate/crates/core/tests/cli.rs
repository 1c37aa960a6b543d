//! End-to-end tests of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_osculant"))
}

#[test]
fn catalog_list_names() {
    let out = bin().args(["catalog", "--list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "togliatti",
        "veronese",
        "rnc2",
        "rnc3",
        "rnc4",
        "cone_rnc3",
        "tangent_dev_rnc4",
    ] {
        assert!(text.lines().any(|l| l == name), "missing {name}");
    }
}

#[test]
fn catalog_entry_is_parseable_grammar() {
    let out = bin()
        .args(["catalog", "--name", "togliatti"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let v = osculant::variety::parse_variety(&text).unwrap();
    assert_eq!(v.name(), "togliatti");
    assert_eq!(v.ambient_dim(), 5);
}

#[test]
fn analyze_catalog_name_json() {
    let out = bin()
        .args(["analyze", "togliatti", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid json report");
    assert_eq!(report["dims"], serde_json::json!([2, 4, 5]));
    assert_eq!(report["overall_pass"], serde_json::json!(true));
}

#[test]
fn analyze_variety_file() {
    let dir = std::env::temp_dir().join("osculant-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conic.variety");
    std::fs::write(&path, "name=conic; vars=u; P0=1; P1=u; P2=u^2").unwrap();
    let out = bin()
        .args(["analyze", path.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["variety"], serde_json::json!("conic"));
    assert_eq!(report["dims"], serde_json::json!([1, 2, 2]));
}

#[test]
fn analyze_rejects_bad_input() {
    let dir = std::env::temp_dir().join("osculant-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.variety");
    std::fs::write(&path, "vars=u; P0=u+; P1=1").unwrap();
    let out = bin().args(["analyze", path.to_str().unwrap()]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("syntax error"), "stderr: {err}");
}

#[test]
fn analyze_unknown_target_fails() {
    let out = bin().args(["analyze", "no_such_variety"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("catalog name"), "stderr: {err}");
}

#[test]
fn verify_all_exits_zero_and_repeats_bytes() {
    let run = || {
        let out = bin()
            .args(["verify", "--all", "--format", "json", "--seed", "0"])
            .output()
            .unwrap();
        assert!(out.status.success(), "verify --all must pass");
        out.stdout
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "fixed seed must reproduce identical bytes");
    let reports: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 7);
}

#[test]
fn verify_requires_all_flag() {
    let out = bin().args(["verify"]).output().unwrap();
    assert!(!out.status.success());
}
