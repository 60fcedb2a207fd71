//! Runs every criterion of the invariant suite, prints one line each, then
//! reruns the whole suite to check the report is byte-identical.

use std::io::Write;

use cops_core::verify::{run_all, to_json, VerifyOptions};

// written straight to stdout so the lines show without --nocapture
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let first = run_all(&opts).expect("suite ran");
    for r in &first {
        report(&r.line());
        for f in r.failures.iter().skip(1) {
            report(&format!("    also: {f}"));
        }
    }
    let a = to_json(&first);
    let b = to_json(&run_all(&opts).expect("second run"));
    let same = a == b;
    report(&format!(
        "criterion 10 [{}] reports byte-identical across runs: {} bytes",
        if same { "PASS" } else { "FAIL" },
        a.len()
    ));
    let failing: Vec<_> = first.iter().filter(|r| !r.complete()).map(|r| r.id).collect();
    assert!(failing.is_empty(), "failing criteria: {failing:?}");
    assert!(same, "verify reports differ between runs");
}
