use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn latsamp(args: &[&str], spec: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latsamp"))
        .args(args)
        .arg(spec)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("machine output is JSON")
}

#[test]
fn check_reports_and_exit_codes() {
    let out = latsamp(
        &["check", "--format", "machine"],
        &corpus("shannon_union.json"),
    );
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["verdict"], "tight");
    assert_eq!(report["K"], "1");
    assert!(report["oracle"].is_null());

    let out = latsamp(&["check"], &corpus("half_shift_pair.json"));
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict:   not-orthogonal"), "{text}");
    assert!(text.contains("alpha: (1)"), "{text}");

    let out = latsamp(&["check"], &corpus("mixed_no_criterion.json"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_echoes_flags_and_is_deterministic() {
    let args = [
        "verify", "--radius", "300", "--trials", "3", "--seed", "11", "--tol", "0.05", "--format",
        "machine",
    ];
    let spec = corpus("half_shift_pair_fixed.json");
    let first = latsamp(&args, &spec);
    let second = latsamp(&args, &spec);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let report = json(&first);
    assert_eq!(report["config"]["radius"], 300);
    assert_eq!(report["config"]["trials"], 3);
    assert_eq!(report["config"]["seed"], 11);
    assert_eq!(report["config"]["tolerance"], 0.05);
    assert_eq!(report["oracle"]["status"], "agree");
}

#[test]
fn bad_specs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dimension": 1, "question": "tight",
            "band_e": [{"lower": ["0"], "upper": ["1/0"]}],
            "system_a": [{"matrix": [["1"]]}]}"#,
    )
    .unwrap();
    let out = latsamp(&["check", "--format", "machine"], &path);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    assert_eq!(report["verdict"], "input-error");
    assert!(
        report["error"]
            .as_str()
            .unwrap()
            .starts_with("band_e[0].upper[0]"),
        "{report}"
    );

    let out = latsamp(&["check"], &dir.path().join("missing.json"));
    assert_eq!(out.status.code(), Some(2));
}
