//! Report shape and the named-check dispatcher.

use tsteenrod::theorems::{self, Status, CHECK_NAMES};

#[test]
fn every_named_check_runs_and_passes_at_small_degree() {
    for name in CHECK_NAMES {
        let report = theorems::run_check(name, 8, None).unwrap();
        assert_eq!(report.check, name);
        assert_eq!(report.status, Status::Pass, "{}", report.render_text());
        assert!(!report.ledger.is_empty());
    }
}

#[test]
fn reports_serialize_with_lowercase_status() {
    let report = theorems::check_appendix();
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["check"], "appendix");
    assert!(v["ledger"].as_array().unwrap().iter().all(|e| e["agree"] == true));
}

#[test]
fn repeated_runs_have_identical_outcomes() {
    let a = theorems::check_k2o(10).unwrap();
    let b = theorems::check_k2o(10).unwrap();
    assert!(a.same_outcome(&b));
}

#[test]
fn sq3_trace_shows_the_cancelling_pair() {
    let report = theorems::check_sq3_kappa10().unwrap();
    assert_eq!(report.status, Status::Pass);
    let pair = report.ledger.iter().find(|e| e.label.as_deref() == Some("uncancelled occurrences of Sq2 λ ⊗ i1 κ")).unwrap();
    assert_eq!(pair.lhs, 2u64.into());
}

#[test]
fn census_rejects_degrees_beyond_the_trusted_bound() {
    assert!(theorems::abp_census(40).is_err());
}

#[test]
fn census_shifts_follow_parity() {
    let (entries, report) = theorems::abp_census(12).unwrap();
    assert!(report.passed());
    for e in entries.iter().filter(|e| e.kind != theorems::CensusKind::Free) {
        assert_eq!(e.n_j, theorems::shift_degree(e.j.iter().sum()));
    }
}

#[test]
fn conjecture_reports_info() {
    let report = theorems::explore_conjecture(6).unwrap();
    assert_eq!(report.status, Status::Info);
    assert!(report.passed());
}
