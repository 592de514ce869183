//! Acceptance gate: runs every criterion of the verification suite and
//! prints one pass/fail line per criterion. All checks are exact.

use btforms_core::verify::{run_criterion, suite_criteria};

#[test]
fn acceptance_criteria() {
    let ids = suite_criteria("all").unwrap();
    let mut failed = Vec::new();
    for id in ids {
        let report =
            run_criterion(id).unwrap_or_else(|e| panic!("criterion {} errored: {}", id, e));
        println!("{}", report.summary_line());
        if !report.passed {
            failed.push(report.id);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {:?}", failed);
}
