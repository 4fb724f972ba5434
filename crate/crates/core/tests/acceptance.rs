//! Acceptance gate: runs the full verification battery at the pinned
//! tolerances and prints one pass/fail line per criterion.

use sliceq::report::CaseReport;
use sliceq::verify::{all_pass, run_suite, SuiteConfig};

fn print_line(r: &CaseReport) {
    println!(
        "{} {:<38} max_err {:>12.3e}  tol {:>9.1e}  [{}]",
        if r.pass { "PASS" } else { "FAIL" },
        r.case,
        r.abs_error,
        r.tol,
        r.paper_ref
    );
}

#[test]
fn acceptance_battery() {
    let cfg = SuiteConfig::default();
    let reports = run_suite(&cfg);
    for r in &reports {
        print_line(r);
    }
    let failures: Vec<&CaseReport> = reports.iter().filter(|r| !r.pass).collect();
    assert!(
        failures.is_empty(),
        "{} acceptance criteria failed: {:?}",
        failures.len(),
        failures.iter().map(|r| r.case.as_str()).collect::<Vec<_>>()
    );
    assert!(all_pass(&reports));
}

#[test]
fn acceptance_battery_is_seed_stable() {
    // A different seed must still pass every criterion.
    let cfg = SuiteConfig { seed: 20260808, ..SuiteConfig::default() };
    let reports = run_suite(&cfg);
    for r in &reports {
        print_line(r);
    }
    assert!(all_pass(&reports), "criteria failed under alternate seed");
}

#[test]
fn suite_is_deterministic() {
    let cfg = SuiteConfig::default();
    let a = serde_json::to_string(&run_suite(&cfg)).unwrap();
    let b = serde_json::to_string(&run_suite(&cfg)).unwrap();
    assert_eq!(a, b);
}
