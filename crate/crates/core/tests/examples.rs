//! The directly-asserted example table, one assertion per example.

use mindec::selftest::worked_examples;

#[test]
fn every_example_holds() {
    let failed: Vec<&str> = worked_examples()
        .into_iter()
        .filter(|(_, f)| !f())
        .map(|(name, _)| name)
        .collect();
    assert!(failed.is_empty(), "failed examples: {failed:?}");
}

#[test]
fn example_names_are_unique() {
    let mut names: Vec<&str> = worked_examples().into_iter().map(|(n, _)| n).collect();
    let total = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), total);
}
