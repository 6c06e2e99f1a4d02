#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary from the workspace root with `ROUGHSET_FIXTURES` unset.
pub fn run(args: &[&str]) -> Output {
    run_in(&workspace_root(), args)
}

pub fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roughset"))
        .current_dir(dir)
        .env_remove("ROUGHSET_FIXTURES")
        .args(args)
        .output()
        .expect("failed to spawn roughset")
}

pub fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed with {:?}\nstderr:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn json_ok(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout_ok(args)).expect("json payload")
}

pub fn all(value: &str) -> String {
    vec![value; 17].join(",")
}

/// Compares stdout with a golden file. `BLESS=1` rewrites the file.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let got = run(args);
    if !got.status.success() {
        return Err(format!(
            "{args:?} exited {:?}: {}",
            got.status.code(),
            String::from_utf8_lossy(&got.stderr)
        ));
    }
    let path = golden_dir().join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &got.stdout).unwrap();
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if got.stdout != expected {
        return Err(format!("stdout of {args:?} differs from golden {name}"));
    }
    Ok(())
}

/// Golden files and the invocations that produce them.
pub fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        ("evaluate_seed42.json", s(&["evaluate", "--synthetic", "42", "--n", "50"])),
        ("evaluate_seed42.txt", s(&["evaluate", "--synthetic", "42", "--format", "text"])),
        ("evaluate_frozen.json", s(&["evaluate", "--test", "fixtures/synthetic_seed42_n50.csv"])),
        ("validate_table6.json", s(&["validate", "--table", "fixtures/table_6.csv"])),
        ("reducts_table6.json", s(&["reducts", "--table", "fixtures/table_6.csv"])),
        ("significance_table6.txt", s(&["significance", "--table", "fixtures/table_6.csv", "--format", "text"])),
        ("audit_published_rules.json", s(&["rules", "audit", "--table", "fixtures/table_6.csv", "--rules", "rules/paper_sec4g.json"])),
        ("rules_induce_table6.json", s(&["rules", "induce", "--table", "fixtures/table_6.csv"])),
        ("frequency_published_rules.json", s(&["rules", "frequency", "--rules", "rules/paper_sec4g.json"])),
        ("id3_train_table6.json", s(&["id3", "train", "--table", "fixtures/table_6.csv"])),
        ("id3_gains_table6.txt", s(&["id3", "gains", "--table", "fixtures/table_6.csv", "--format", "text"])),
        ("autopilot_all_yes.json", vec!["autopilot".into(), "--faults".into(), all("yes")]),
        ("autopilot_all_no.txt", vec!["autopilot".into(), "--faults".into(), all("no"), "--format".into(), "text".into()]),
    ]
}
