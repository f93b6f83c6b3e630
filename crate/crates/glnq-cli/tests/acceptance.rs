//! Full verification suite as a test target: one pass/fail line per
//! criterion, failing the test if any criterion fails.

use std::path::PathBuf;

fn shared_cache_dir() -> PathBuf {
    // Reuse one cache across test runs so the exact tables (the slow part)
    // are computed once per checkout.
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../target/glnq-test-cache");
    std::fs::create_dir_all(&dir).expect("create cache dir");
    dir
}

#[test]
fn acceptance() {
    let results = glnq_cli::verify::run_all(&shared_cache_dir());
    let mut all_ok = true;
    for r in &results {
        println!("{}", r.line());
        all_ok &= r.passed();
    }
    assert!(all_ok, "one or more acceptance criteria failed (see lines above)");
}
