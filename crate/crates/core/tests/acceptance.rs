//! The acceptance criteria, one test per criterion, so the harness prints a
//! pass/fail line for each. Run with `--nocapture` to see the suite reports.

use quadperiod::verify::{run_suite, Suite, VerifyConfig};

fn criterion(n: usize, suite: Suite) {
    let report = run_suite(suite, &VerifyConfig::default()).unwrap_or_else(|e| panic!("criterion {n}: {suite}: {e}"));
    println!("criterion {n:>2}: {}", report.summary_line());
    for note in &report.notes {
        println!("    {note}");
    }
    for f in &report.failures {
        println!("    {f}");
    }
    assert!(report.pass, "criterion {n}: {}", report.summary_line());
}

#[test]
fn criterion_01_zagier_tables() {
    criterion(1, Suite::Tables);
}

#[test]
fn criterion_02_constant_value() {
    criterion(2, Suite::ConstantValue);
}

#[test]
fn criterion_03_weight_six_not_constant() {
    criterion(3, Suite::HigherWeight);
}

#[test]
fn criterion_04_representation_equivalence() {
    criterion(4, Suite::Representations);
}

#[test]
fn criterion_05_bijection_audits() {
    criterion(5, Suite::Bijections);
}

#[test]
fn criterion_06_exact_cocycles() {
    criterion(6, Suite::Cocycle);
}

#[test]
fn criterion_07_dual_l_oracle() {
    criterion(7, Suite::LOracle);
}

#[test]
fn criterion_08_counting_and_cycles() {
    criterion(8, Suite::Counting);
}

#[test]
fn criterion_09_stream_laws() {
    criterion(9, Suite::StreamLaws);
}

#[test]
fn criterion_10_p_gamma_identities() {
    criterion(10, Suite::Identities);
}
