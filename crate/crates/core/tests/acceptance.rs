//! The nine acceptance checks, one test each; every test prints its
//! pass/fail line (visible with `--nocapture`).

use gipers::verify::run_criterion;

fn check(id: u32) {
    let outcome = run_criterion(id);
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn acceptance_1_two_spheres_degree_one_diagram() {
    check(1);
}

#[test]
fn acceptance_2_two_spheres_stability_sandwich() {
    check(2);
}

#[test]
fn acceptance_3_circle_rooms_separation() {
    check(3);
}

#[test]
fn acceptance_4_invariance_under_conjugation_closed_elements() {
    check(4);
}

#[test]
fn acceptance_5_oracle_equivalence() {
    check(5);
}

#[test]
fn acceptance_6_quotient_equivalence() {
    check(6);
}

#[test]
fn acceptance_7_structural_invariants() {
    check(7);
}

#[test]
fn acceptance_8_perturbation_stability() {
    check(8);
}

#[test]
fn acceptance_9_operator_contraction() {
    check(9);
}
