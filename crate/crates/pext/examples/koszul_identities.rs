//! The sign conventions, validated live: the four differentials square to
//! zero, the duality transport reproduces the divergence, the Koszul
//! complex intertwines with the form-side complex up to the parity sign,
//! and the divergence generates the Schouten bracket.
//!
//! ```bash
//! cargo run --example koszul_identities
//! ```

use pext::cli::suites::run_suite;

fn main() {
    let seed = 2026;
    let runs = [
        ("dphi-squared", 120),
        ("divergence-squared", 120),
        ("derham-squared", 120),
        ("koszul-form-squared", 120),
        ("divergence-transport", 120),
        ("flat-sharp", 120),
        ("intertwining", 120),
        ("koszul-formula", 120),
        ("schouten-antisymmetry", 120),
        ("schouten-leibniz", 120),
        ("schouten-jacobi", 120),
        ("jacobiator", 60),
        ("lichnerowicz-squared", 60),
        ("exactness", 60),
    ];
    println!("{:<24} {:>6} {:>7}", "suite", "cases", "result");
    for (name, count) in runs {
        let outcome = run_suite(name, seed, count).expect("known suite");
        println!(
            "{:<24} {:>6} {:>7}",
            name,
            outcome.cases,
            if outcome.all_passed() { "pass" } else { "FAIL" }
        );
        assert!(outcome.all_passed(), "{name} failed: {:?}", outcome.failures);
    }
    println!("\nall identity suites pass with seed {seed}");
}
