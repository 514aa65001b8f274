mod common;

use common::{golden_path, run_json, CASES};

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for case in CASES {
        let actual = run_json(case);
        let path = golden_path(case);
        if update {
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        if actual != expected {
            mismatches.push(case.name);
        }
    }
    assert!(
        mismatches.is_empty(),
        "reports differ from golden files: {mismatches:?}"
    );
}
