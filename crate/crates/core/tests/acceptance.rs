//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line
//! per claim followed by a summary line.

use equigraph::verify::{criterion_claims, COHERENCE_TOL};

fn gate(criterion: u8, title: &str) {
    let claims = criterion_claims(criterion);
    assert!(
        !claims.is_empty(),
        "criterion {criterion} produced no claims"
    );
    for c in &claims {
        println!(
            "    [{}] {}: {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = claims.iter().filter(|c| !c.passed).count();
    println!(
        "{} criterion {criterion:>2} {title} ({} claims, {failed} failed)",
        if failed == 0 { "PASS" } else { "FAIL" },
        claims.len()
    );
    assert_eq!(failed, 0, "criterion {criterion}: {failed} failing claims");
}

#[test]
fn criterion_01_crowns() {
    gate(1, "crown graphs and their complements");
}

#[test]
fn criterion_02_integral_cubic() {
    gate(2, "connected integral cubic graphs");
}

#[test]
fn criterion_03_distance_regular_cubic() {
    gate(3, "distance-regular cubic graphs");
}

#[test]
fn criterion_04_srg_enumeration() {
    gate(4, "primitive srg enumeration up to 2500 vertices");
}

#[test]
fn criterion_05_closed_energies() {
    gate(5, "closed-form energies of the three families");
}

#[test]
fn criterion_06_family_sweeps() {
    gate(6, "named srg families");
}

#[test]
fn criterion_07_generalized_paley() {
    gate(7, "generalized Paley graphs");
}

#[test]
fn criterion_08_cameron() {
    gate(8, "NL, Smith and spectrum-determined srgs");
}

#[test]
fn criterion_09_rings_even() {
    gate(9, "unitary Cayley graphs, even number of factors");
}

#[test]
fn criterion_10_rings_odd() {
    gate(10, "unitary Cayley graphs, odd number of factors");
}

#[test]
fn criterion_11_coherence() {
    println!("    tolerance {COHERENCE_TOL:e} per eigenvalue");
    gate(11, "numeric and exact spectra agree");
}
