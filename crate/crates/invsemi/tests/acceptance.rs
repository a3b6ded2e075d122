//! End-to-end acceptance battery, one test per check.
//!
//! All ten checks share a single full-mode [`Battery`], so the order-4
//! census and the exhaustive word sweep are computed once no matter which
//! test thread gets there first. Each test prints its evidence lines (visible
//! with `--nocapture`) and, on failure, panics with the same lines.

use std::sync::OnceLock;

use invsemi::selftest::{Battery, SelftestConfig};

static BATTERY: OnceLock<Battery> = OnceLock::new();

fn run(id: usize) {
    let battery = BATTERY.get_or_init(|| Battery::new(SelftestConfig::default()));
    let outcome = battery.check(id);
    for line in &outcome.details {
        println!("[{:>2}] {line}", outcome.id);
    }
    assert!(
        outcome.passed,
        "{} failed:\n  {}",
        outcome.name,
        outcome.details.join("\n  ")
    );
}

#[test]
fn check_01_census_of_order_2() {
    run(1);
}

#[test]
fn check_02_census_of_order_3() {
    run(2);
}

#[test]
fn check_03_census_of_order_4() {
    run(3);
}

#[test]
fn check_04_published_order_4_rows() {
    run(4);
}

#[test]
fn check_05_classifier_labels() {
    run(5);
}

#[test]
fn check_06_rule_systems_hold_in_their_tables() {
    run(6);
}

#[test]
fn check_07_decision_procedure_vs_brute_force() {
    run(7);
}

#[test]
fn check_08_normal_forms_and_derivations() {
    run(8);
}

#[test]
fn check_09_zero_word_certificates() {
    run(9);
}

#[test]
fn check_10_quotient_onto_the_star_semilattice() {
    run(10);
}
