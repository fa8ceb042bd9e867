//! End-to-end checks of the binary: exit codes, determinism, and the poset
//! file round trip.

use std::process::Command;

fn ordaut(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ordaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn generate_then_analyze_round_trips() {
    let gen = ordaut(&["generate", "--family", "no-d-endos", "--n", "3"]);
    assert!(gen.status.success());
    let dir = std::env::temp_dir().join("ordaut-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("ndd3.txt");
    std::fs::write(&file, &gen.stdout).unwrap();
    let path = file.to_str().unwrap();

    let out = ordaut(&["analyze", path, "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 12);
    assert_eq!(v["aut_order"], "6");
    assert_eq!(v["unions"], 1);

    // byte-identical reruns
    let again = ordaut(&["analyze", path, "--format", "json"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn refused_certificates_still_exit_zero() {
    let gen = ordaut(&["generate", "--family", "no-d-endos", "--n", "3"]);
    let dir = std::env::temp_dir().join("ordaut-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("ndd3-bound.txt");
    std::fs::write(&file, &gen.stdout).unwrap();

    let out = ordaut(&["bound", file.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "refusal is a report, not an error");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["unions"][0]["primitive_orbit_bound"]["status"], "refused");
    assert_eq!(v["unions"][0]["iou_bound"]["status"], "certified");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ordaut(&["no-such-subcommand"]).status.code(), Some(2));
    assert_eq!(ordaut(&["validate", "/no/such/file"]).status.code(), Some(2));
}

#[test]
fn corpus_verify_small_run_passes() {
    let out = ordaut(&["corpus-verify", "--max-n", "4", "--random-count", "5", "--jobs", "2"]);
    assert!(out.status.success());
}
