//! Acceptance suite: one test per verification check, in suite order. Each
//! prints one pass line with the check's summary; a failure panics with the
//! witness. The CLI `verify-all` verb runs the same list.

use graded_brauer::verify::checks;

fn run(index: usize) {
    let list = checks();
    let check = &list[index];
    match (check.run)() {
        Ok(detail) => println!("criterion {} ({}): PASS - {detail}", index + 1, check.name),
        Err(witness) => panic!("criterion {} ({}): FAIL - {witness}", index + 1, check.name),
    }
}

#[test]
fn criterion_01_clifford_table() {
    run(0);
}

#[test]
fn criterion_02_product_formula() {
    run(1);
}

#[test]
fn criterion_03_eight_periodicity() {
    run(2);
}

#[test]
fn criterion_04_cohomology_oracle() {
    run(3);
}

#[test]
fn criterion_05_point_groups() {
    run(4);
}

#[test]
fn criterion_06_trivial_involution_two_torsion() {
    run(5);
}

#[test]
fn criterion_07_equivalence_invariance() {
    run(6);
}

#[test]
fn criterion_08_odd_torsion_decomposition() {
    run(7);
}

#[test]
fn criterion_09_extension_classification() {
    run(8);
}

#[test]
fn criterion_10_group_axioms_and_splitting() {
    run(9);
}

#[test]
fn criterion_11_open_question_probes() {
    run(10);
}
