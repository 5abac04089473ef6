//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line with measured values.

use monoid_census_cli::verify::{
    check_even_ratio, check_figure_bound, check_identities, check_main_term, check_oracle,
    check_quadratics, check_totient_sum, check_unit_count_ratio, check_word_properties,
    CheckResult, VerifyConfig,
};

fn gate(r: CheckResult) {
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_1_oracle_equivalence() {
    gate(check_oracle(500));
}

#[test]
fn criterion_2_exact_identities() {
    gate(check_identities(2000));
}

#[test]
fn criterion_3_main_term_ratio() {
    gate(check_main_term(&VerifyConfig::default()));
}

#[test]
fn criterion_4_even_class_ratio() {
    gate(check_even_ratio());
}

#[test]
fn criterion_5_s_minus_c_bound() {
    gate(check_figure_bound());
}

#[test]
fn criterion_6_totient_partial_sum() {
    gate(check_totient_sum());
}

#[test]
fn criterion_7_quadratics() {
    gate(check_quadratics(2000));
}

#[test]
fn criterion_8_unit_count_ratio() {
    gate(check_unit_count_ratio());
}

#[test]
fn criterion_9_word_properties() {
    gate(check_word_properties());
}

/// Negative control: an injected offset in c2 must make the main-term
/// check fail, proving the gate can reject.
#[test]
fn negative_control_perturbed_constant() {
    let cfg = VerifyConfig { perturb_c2: 0.5, ..VerifyConfig::default() };
    let r = check_main_term(&cfg);
    assert!(!r.passed, "perturbed constant was not detected: {}", r.line());
}
