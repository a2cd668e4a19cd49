//! The acceptance suite: one test per headline criterion, each printing a
//! single pass/fail line. Run with `--nocapture` to see the lines.

use xomega::verify;

const SEED: u64 = 42;

fn report(result: xomega::Result<verify::CriterionResult>) {
    let r = result.expect("criterion ran to completion");
    println!(
        "{}: {} ({})",
        r.name,
        if r.pass { "PASS" } else { "FAIL" },
        r.detail
    );
    assert!(r.pass, "{} failed: {}", r.name, r.detail);
}

#[test]
fn criterion_01_eq1_closed_forms() {
    report(verify::criterion_1());
}

#[test]
fn criterion_02_prop4_quotient_iso() {
    report(verify::criterion_2(SEED));
}

#[test]
fn criterion_03_thm9_schreier_iso() {
    report(verify::criterion_3());
}

#[test]
fn criterion_04_bh05_distance() {
    report(verify::criterion_4());
}

#[test]
fn criterion_05_thm12_diameter_band() {
    report(verify::criterion_5());
}

#[test]
fn criterion_06_thm13_upper_growth() {
    report(verify::criterion_6());
}

#[test]
fn criterion_07_thm13_lower_growth() {
    report(verify::criterion_7());
}

#[test]
fn criterion_08_contraction_nucleus() {
    report(verify::criterion_8(SEED));
}

#[test]
fn criterion_09_local_structure() {
    report(verify::criterion_9());
}

#[test]
fn criterion_10_genericity() {
    report(verify::criterion_10());
}

#[test]
fn criterion_11_automata_equivalence() {
    report(verify::criterion_11());
}

#[test]
fn criterion_12_golden_figures() {
    report(verify::criterion_12());
}
