//! One test per acceptance criterion. Each prints a single pass/fail line
//! (visible under `cargo test --test acceptance -- --nocapture`) and asserts
//! the criterion, including its runtime budget where one is stated.

use std::time::Duration;

use picard::verify::{self, CheckReport};

fn report(n: usize, r: &CheckReport, budget: Option<Duration>) {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {:2} [{verdict}] {} — {} ({:.3?})",
        n, r.name, r.detail, r.elapsed
    );
    assert!(r.pass, "criterion {n} ({}): {}", r.name, r.detail);
    if let Some(b) = budget {
        assert!(
            r.elapsed <= b,
            "criterion {n} ({}): took {:?}, budget {:?}",
            r.name,
            r.elapsed,
            b
        );
    }
}

#[test]
fn criterion_01_generator_membership() {
    report(1, &verify::check_generators(), Some(Duration::from_millis(100)));
}

#[test]
fn criterion_02_table1_reproduction() {
    report(2, &verify::check_table1(), Some(Duration::from_secs(2)));
}

#[test]
fn criterion_03_fixed_point_coordinates() {
    report(3, &verify::check_fixed_points(), None);
}

#[test]
fn criterion_04_first_contact_optimizer() {
    report(4, &verify::check_first_contact(), Some(Duration::from_secs(30)));
}

#[test]
fn criterion_05_gamma_invariance() {
    report(5, &verify::check_gamma_invariance(0x5eed_0001, 1000), None);
}

#[test]
fn criterion_06_siegel_reduction() {
    report(6, &verify::check_siegel_reduction(0x5eed_0002, 1000), None);
}

#[test]
fn criterion_07_spine_membership() {
    report(7, &verify::check_spine(), None);
}

#[test]
fn criterion_08_admissibility() {
    report(8, &verify::check_admissibility(), None);
}

#[test]
fn criterion_09_fixed_surface_sampling() {
    report(9, &verify::check_fixed_surfaces(0x5eed_0003, 100), None);
}

#[test]
fn criterion_10_stabilizer_fixed_point_conditions() {
    report(10, &verify::check_gamma_of_beta0(), None);
}

#[test]
fn criterion_11_bounded_nonconjugacy() {
    report(11, &verify::check_nonconjugacy(), Some(Duration::from_secs(300)));
}

#[test]
fn criterion_12_oracle_equivalence() {
    report(12, &verify::check_oracle_equivalence(), None);
}
