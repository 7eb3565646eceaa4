//! End-to-end tests of the binary: exit codes, JSON output shapes, and
//! byte-level determinism of certificate files.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pointforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout lines are JSON"))
        .collect()
}

fn write_curve(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn genus_values_and_exit_codes() {
    let out = run(&["genus", "--n", "4"]);
    assert!(out.status.success());
    let docs = stdout_json_lines(&out);
    assert_eq!(docs[0]["genus"], serde_json::json!(1));
    assert_eq!(docs[0]["riemann_hurwitz_consistent"], serde_json::json!(true));

    let out = run(&["genus", "--n", "5"]);
    let docs = stdout_json_lines(&out);
    assert_eq!(docs[0]["genus"], serde_json::json!(5));

    let out = run(&["genus", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_genus_suite_passes() {
    let out = run(&["verify", "--suite", "genus"]);
    assert!(out.status.success());
    for doc in stdout_json_lines(&out) {
        assert_eq!(doc["passed"], serde_json::json!(true));
    }
}

#[test]
fn verify_cubic_suite_passes() {
    let out = run(&["verify", "--suite", "cubic", "--samples", "25"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn corrupted_build_fails_verification() {
    // negative control: inject a wrong A1 into the quadratic suite
    let out = run(&[
        "verify",
        "--suite",
        "quad",
        "--samples",
        "5",
        "--inject-fault",
        "quad-wrong-a1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let failing: Vec<serde_json::Value> = stdout_json_lines(&out)
        .into_iter()
        .filter(|d| d["passed"] == serde_json::json!(false))
        .collect();
    assert!(!failing.is_empty());
    // the failing check serializes the instance for replay
    assert!(failing[0]["detail"].as_str().unwrap().contains("instance"));
}

#[test]
fn forge_cubic_golden_certificate_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write_curve(
        dir.path(),
        "cubic.json",
        r#"{"kind": "cubic", "a": "0", "b": "0", "c": "2"}"#,
    );
    let cert_path = dir.path().join("cert.json");
    let out = run(&[
        "forge",
        "--curve",
        &curve,
        "--count",
        "3",
        "--height",
        "3",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = &stdout_json_lines(&out)[0];
    assert_eq!(summary["accepted"], serde_json::json!(3));
    assert_eq!(summary["status"], serde_json::json!("complete"));

    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    let deltas: Vec<i64> = cert["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["delta"].as_i64().unwrap())
        .collect();
    assert_eq!(deltas, vec![-357, 3, 3741]);

    // round trip: the verify subcommand accepts the file
    let out = run(&["verify", "--cert", cert_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json_lines(&out)[0]["verdict"],
        serde_json::json!("accept")
    );

    // corrupting the file makes verification fail
    let mut corrupted = cert.clone();
    corrupted["points"][0]["delta"] = serde_json::json!(-355);
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&corrupted).unwrap()).unwrap();
    let out = run(&["verify", "--cert", bad_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn forge_normalizes_rational_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    // α = 1 and β = 3 are rational: c = d = 0 triggers the normalization
    let curve = write_curve(
        dir.path(),
        "quad.json",
        r#"{"kind": "quadratic", "m": 2, "a": "1", "b": "3", "c": "0", "d": "0"}"#,
    );
    let cert_path = dir.path().join("cert.json");
    let out = run(&[
        "forge",
        "--curve",
        &curve,
        "--count",
        "2",
        "--height",
        "6",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert!(cert["curve"]["normalization"].is_object());
    // the normalized curve must be re-verifiable from the file alone
    let out = run(&["verify", "--cert", cert_path.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn forge_rejects_non_squarefree_m() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write_curve(
        dir.path(),
        "bad.json",
        r#"{"kind": "quadratic", "m": 4, "a": "1", "b": "1", "c": "1", "d": "1"}"#,
    );
    let out = run(&[
        "forge",
        "--curve",
        &curve,
        "--count",
        "1",
        "--out",
        dir.path().join("cert.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn forge_partial_certificate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write_curve(
        dir.path(),
        "cubic.json",
        r#"{"kind": "cubic", "a": "0", "b": "0", "c": "2"}"#,
    );
    let out = run(&[
        "forge",
        "--curve",
        &curve,
        "--count",
        "40",
        "--height",
        "2",
        "--out",
        dir.path().join("cert.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let summary = &stdout_json_lines(&out)[0];
    assert_eq!(summary["status"], serde_json::json!("partial"));
}

#[test]
fn forge_output_is_deterministic_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write_curve(
        dir.path(),
        "cubic.json",
        r#"{"kind": "cubic", "a": "0", "b": "0", "c": "2"}"#,
    );
    let mut outputs = Vec::new();
    for (name, jobs) in [("a.json", "1"), ("b.json", "1"), ("c.json", "3")] {
        let path = dir.path().join(name);
        let out = run(&[
            "forge",
            "--curve",
            &curve,
            "--count",
            "3",
            "--height",
            "3",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        outputs.push(std::fs::read(path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn quartic_search_lists_seeds() {
    let out = run(&["quartic-search", "--poly", "1,1,1,1", "--height", "3"]);
    assert!(out.status.success());
    let doc = &stdout_json_lines(&out)[0];
    let seeds = doc["seeds"].as_array().unwrap();
    let has = |u: &str, v: &str| {
        seeds
            .iter()
            .any(|s| s["u"] == serde_json::json!(u) && s["v"] == serde_json::json!(v))
    };
    assert!(has("0/1", "1/1"));
    assert!(has("-1/1", "1/1"));
    assert!(has("3/1", "11/1"));
    // reducible quartic is invalid input
    let out = run(&["quartic-search", "--poly", "0,3,0,2", "--height", "2"]);
    assert_eq!(out.status.code(), Some(1));
}
