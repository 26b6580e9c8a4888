//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

use std::io::Write;

use stabmod_cli::acceptance;

#[test]
fn acceptance_criteria() {
    let outcomes = acceptance::run_all();
    // Written to the raw handle so the lines survive the harness's output capture.
    let mut err = std::io::stderr().lock();
    for o in &outcomes {
        writeln!(err, "{}", o.line()).unwrap();
        for c in o.checks.iter().filter(|c| !c.passed) {
            writeln!(err, "    {}: {}", c.name, c.detail).unwrap();
        }
    }
    drop(err);
    assert_eq!(outcomes.len(), 8);
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failing criteria {failed:?}");
}

#[test]
fn criterion_reports_are_reproducible() {
    let strip = |o: acceptance::CriterionOutcome| {
        let mut v = serde_json::to_value(o).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    for id in [1, 3, 8] {
        let a = strip(acceptance::run_criterion(id).unwrap());
        let b = strip(acceptance::run_criterion(id).unwrap());
        assert_eq!(a, b, "criterion {id}");
    }
}
