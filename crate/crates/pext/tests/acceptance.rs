//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Everything is exact rational arithmetic, so every comparison below is
//! exact equality; the only tolerances are the stated wall-clock budgets.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use pext::cli::corpus;
use pext::cli::suites::run_suite;
use pext::extension::{check_hamiltonian, extend_dim3, HamiltonianCheck};
use pext::exterior::{schouten, Multivector};
use pext::groebner::milnor;
use pext::polyring::{parse, Poly};

fn p(text: &str, n: usize) -> Poly {
    parse(text, n).unwrap()
}

fn assert_suite(name: &str, seed: u64, count: usize) {
    let outcome = run_suite(name, seed, count).expect("suite exists");
    assert!(
        outcome.all_passed(),
        "suite {name} (seed {seed}, count {count}) failed: {:?}",
        outcome.failures.first()
    );
}

fn budget(start: Instant, limit: Duration, label: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < limit,
        "{label} exceeded its runtime budget: {elapsed:?} >= {limit:?}"
    );
}

#[test]
fn criterion_01_dim3_quadric_formula() {
    let start = Instant::now();
    let phi = p("x1^2 + x2^2 + x3^2", 3);
    let result = extend_dim3(&phi, &Poly::one(3)).unwrap();

    // The closed-form extension, instantiated at f = 1:
    // f phi_3 d1^d2 + f phi_2 d3^d1 + f phi_1 d2^d3.
    let d3_wedge_d1 = Multivector::basis(3, &[2]).wedge(&Multivector::basis(3, &[0]));
    let expected = Multivector::term(3, &[0, 1], phi.partial(2))
        .add(&d3_wedge_d1.mul_poly(&phi.partial(1)))
        .add(&Multivector::term(3, &[1, 2], phi.partial(0)));
    assert_eq!(result.beta, expected);
    assert_eq!(
        result.beta.to_string(),
        "2*x3 d1^d2 - 2*x2 d1^d3 + 2*x1 d2^d3"
    );
    assert!(result.is_poisson);
    assert!(schouten(&result.beta, &result.beta).is_zero());
    assert!(result.beta.d_phi(&phi).is_zero());
    budget(start, Duration::from_secs(1), "criterion 1");
    println!("ACCEPTANCE 01 dim3-quadric-formula: PASS");
}

#[test]
fn criterion_02_dim3_generality_over_corpus() {
    let start = Instant::now();
    // 9 surface entries cycled round-robin; 180 cases = 20 random f per
    // entry, coefficient degree <= 3.
    assert_suite("extend-dim3", 1002, 180);
    budget(start, Duration::from_secs(60), "criterion 2");
    println!("ACCEPTANCE 02 dim3-generality: PASS");
}

#[test]
fn criterion_03_intertwining() {
    let start = Instant::now();
    // Dimension cycles 2,3,4; 600 cases = 200 per dimension. The suite
    // asserts flat(d_phi A) = (-1)^(n+1) koszul_d(flat A) exactly.
    assert_suite("intertwining", 1003, 600);
    budget(start, Duration::from_secs(60), "criterion 3");
    println!("ACCEPTANCE 03 intertwining: PASS");
}

#[test]
fn criterion_04_complexes_square_to_zero() {
    let start = Instant::now();
    assert_suite("dphi-squared", 1004, 600);
    assert_suite("divergence-squared", 1004, 600);
    assert_suite("derham-squared", 1004, 600);
    assert_suite("koszul-form-squared", 1004, 600);
    budget(start, Duration::from_secs(60), "criterion 4");
    println!("ACCEPTANCE 04 complex-properties: PASS");
}

#[test]
fn criterion_05_koszul_formula() {
    let start = Instant::now();
    // 200 seeded pairs, n <= 4, total degree <= n. The divergence-generated
    // bracket agrees with the direct Schouten bracket with global constant
    // +1 under this crate's conventions.
    assert_suite("koszul-formula", 1005, 200);
    budget(start, Duration::from_secs(60), "criterion 5");
    println!("ACCEPTANCE 05 koszul-formula: PASS");
}

#[test]
fn criterion_06_dim4_identity_and_obstruction_agreement() {
    let start = Instant::now();
    // 100 seeded X3 over the 4-quadric, coefficient degree <= 2:
    // [X3, d_phi X3] = -2 D(X3) ^ d_phi X3 exactly, and the two
    // obstruction paths return identical verdicts.
    assert_suite("dim4-identity", 1006, 100);
    budget(start, Duration::from_secs(300), "criterion 6");
    println!("ACCEPTANCE 06 dim4-identity: PASS");
}

#[test]
fn criterion_07_decomposition_round_trip() {
    let start = Instant::now();
    // 50 seeded pairs (X3, X2), coefficient degree <= 2, phi in {A1,A2,A3}.
    assert_suite("decompose-roundtrip", 1007, 50);
    budget(start, Duration::from_secs(300), "criterion 7");
    println!("ACCEPTANCE 07 decompose-roundtrip: PASS");
}

#[test]
fn criterion_08_milnor_numbers() {
    let start = Instant::now();
    let expected: &[(&str, u64)] = &[
        ("A1", 1),
        ("A2", 2),
        ("A3", 3),
        ("A4", 4),
        ("D4", 4),
        ("D5", 5),
        ("E6", 6),
        ("E7", 7),
        ("E8", 8),
    ];
    for (name, mu) in expected {
        let entry = corpus::entry(name).unwrap();
        let data = milnor(&entry.phi_poly()).unwrap();
        assert!(data.is_isolated, "{name}");
        assert_eq!(data.milnor_number, Some(*mu), "{name}");
        assert_eq!(data.standard_monomials.len() as u64, *mu, "{name}");
    }
    let non_isolated = milnor(&p("x1^2*x2", 3)).unwrap();
    assert!(!non_isolated.is_isolated);
    assert_eq!(non_isolated.milnor_number, None);
    budget(start, Duration::from_secs(10), "criterion 8");
    println!("ACCEPTANCE 08 milnor-numbers: PASS");
}

#[test]
fn criterion_09_negative_detection() {
    // Library side: a concrete witness on the constant bivector.
    let phi = p("x1^2 + x2^2 + x3^2", 3);
    let bad = Multivector::basis(3, &[0, 1]);
    match check_hamiltonian(&bad, &phi) {
        HamiltonianCheck::Fail(w) => {
            assert!(!w.remainder.is_zero());
            assert!(w.coefficient.exact_div(&phi).is_none());
        }
        HamiltonianCheck::Ok => panic!("d1^d2 must fail over the quadric"),
    }

    // Binary side: extend refuses a non-isolated equation with exit 3.
    let dir = std::env::temp_dir().join("pext-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("non_isolated.json");
    std::fs::write(&path, r#"{"n": 3, "phi": "x1^2*x2", "f": "1"}"#).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_pext"))
        .args(["extend", "--file"])
        .arg(&path)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(3), "expected exit code 3");
    println!("ACCEPTANCE 09 negative-detection: PASS");
}

#[test]
fn criterion_10_verify_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_pext"))
            .args([
                "verify",
                "--suite",
                "koszul-formula",
                "--seed",
                "20260808",
                "--count",
                "40",
            ])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "reports must be bit-identical");
    assert!(!first.stdout.is_empty());
    println!("ACCEPTANCE 10 verify-determinism: PASS");
}
