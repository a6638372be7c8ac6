use apolar_kit::corpus::{fixture_ids, run_fixture};

#[test]
fn every_fixture_passes() {
    let mut failed = Vec::new();
    for id in fixture_ids() {
        let report = run_fixture(&id).unwrap();
        for c in report.failures() {
            eprintln!("{id}: {} -> {}", c.name, serde_json::to_string(&c.computed).unwrap());
        }
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing fixtures: {failed:?}");
}
