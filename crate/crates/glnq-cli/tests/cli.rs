//! End-to-end tests of the binary: exit codes, determinism, edge cases, and
//! cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn glnq(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glnq"))
        .env("GLNQ_CACHE_DIR", cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn json_artifacts_are_versioned_and_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let a = stdout_of(&glnq(tmp.path(), &["dims", "--n", "5"]));
    let b = stdout_of(&glnq(tmp.path(), &["dims", "--n", "5"]));
    assert_eq!(a, b, "repeated runs must be byte-for-byte identical");
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], "1");

    let a = stdout_of(&glnq(tmp.path(), &["sps", "--n", "4", "--q", "3", "--format", "csv"]));
    let b = stdout_of(&glnq(tmp.path(), &["sps", "--n", "4", "--q", "3", "--format", "csv"]));
    assert_eq!(a, b);
    assert!(a.starts_with("partition,d_L,dim,char_at_t,c_D,exponent\n"));
}

#[test]
fn edge_cases_do_not_panic() {
    let tmp = tempfile::tempdir().unwrap();
    let out = glnq(tmp.path(), &["dims", "--n", "1"]);
    assert!(out.status.success());
    let out = glnq(tmp.path(), &["count", "--n", "3", "--k", "0"]);
    assert!(out.status.success());
    let out = glnq(tmp.path(), &["pieri", "--shape", "", "--boxes", "0"]);
    assert!(out.status.success());
}

#[test]
fn usage_and_input_errors_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    let out = glnq(tmp.path(), &["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(1));
    // q = 6 is not a prime power.
    let out = glnq(tmp.path(), &["sps", "--n", "3", "--q", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn resource_limits_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    // Irrep enumeration is capped at n ≤ 6.
    let out = glnq(tmp.path(), &["count", "--n", "9", "--k", "1", "--q", "2", "--list"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file_atomically_and_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("dims.json");
    let out = glnq(
        tmp.path(),
        &["dims", "--n", "4", "--out", path.to_str().unwrap()],
    );
    assert!(out.status.success());
    let on_disk = std::fs::read_to_string(&path).unwrap();
    let streamed = stdout_of(&glnq(tmp.path(), &["dims", "--n", "4"]));
    assert_eq!(on_disk, streamed);
}

#[test]
fn cache_survives_corruption_and_clear() {
    let tmp = tempfile::tempdir().unwrap();
    let first = stdout_of(&glnq(tmp.path(), &["chartab", "--group", "GL", "--n", "2", "--q", "3"]));

    // Corrupt the entry; the next run must recompute and still succeed.
    let entry = tmp.path().join("gl_2_3.group.json");
    assert!(entry.exists(), "cache entry written");
    std::fs::write(&entry, b"garbage").unwrap();
    let second = stdout_of(&glnq(tmp.path(), &["chartab", "--group", "GL", "--n", "2", "--q", "3"]));
    assert_eq!(first, second);
    // And the entry was rewritten with a valid checksum.
    let listing = stdout_of(&glnq(tmp.path(), &["cache", "list"]));
    assert!(listing.contains("gl_2_3.group.json\t") && listing.contains("\tok"));

    let out = glnq(tmp.path(), &["cache", "clear"]);
    assert!(out.status.success());
    assert!(!entry.exists());
    let third = stdout_of(&glnq(tmp.path(), &["chartab", "--group", "GL", "--n", "2", "--q", "3"]));
    assert_eq!(first, third);
}

#[test]
fn walk_modes_agree_and_mc_is_seeded() {
    let tmp = tempfile::tempdir().unwrap();
    let exact = stdout_of(&glnq(
        tmp.path(),
        &["walk", "--group", "SL", "--n", "3", "--q", "2", "--steps", "4", "--mode", "exact"],
    ));
    let fourier = stdout_of(&glnq(
        tmp.path(),
        &["walk", "--group", "SL", "--n", "3", "--q", "2", "--steps", "4", "--mode", "fourier"],
    ));
    let ex: serde_json::Value = serde_json::from_str(&exact).unwrap();
    let fo: serde_json::Value = serde_json::from_str(&fourier).unwrap();
    assert_eq!(ex["rows"], fo["rows"], "exact and Fourier transcripts agree");

    let args = [
        "walk", "--group", "SL", "--n", "3", "--q", "2", "--steps", "3", "--mode", "mc",
        "--trials", "2000", "--seed", "7",
    ];
    let a = stdout_of(&glnq(tmp.path(), &args));
    let b = stdout_of(&glnq(tmp.path(), &args));
    assert_eq!(a, b, "Monte Carlo runs are deterministic for a fixed seed");
}

#[test]
fn eta_round_trips_through_json() {
    let tmp = tempfile::tempdir().unwrap();
    let tau = r#"{"n": 2, "unsplit": [], "split": [], "trivial_shape": [1, 1]}"#;
    let out = stdout_of(&glnq(tmp.path(), &["eta", "--tau", tau, "--n", "5"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["image"]["trivial_shape"], serde_json::json!([3, 1, 1]));
}
