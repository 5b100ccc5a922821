//! Koszul decomposition of a hamiltonian bi-derivation:
//! beta = d_phi(X3) + phi*X2, with d_phi(beta) = phi*X1 and X1 = d_phi(X2).
//!
//! Builds a bracket from a chosen X3 and X2 over the cusp surface, runs the
//! decomposition, and shows that the freedom in X2 never changes the
//! bracket modulo phi.
//!
//! ```bash
//! cargo run --example decompose_bracket
//! ```

use pext::extension::{check_hamiltonian, decompose, freedom_in_x2, HamiltonianCheck};
use pext::exterior::Multivector;
use pext::polyring::parse;

fn main() {
    let phi = parse("x1^3 + x2^2 + x3^2", 3).unwrap();
    println!("surface: phi = {phi}");

    let x3 = Multivector::term(3, &[0, 1, 2], parse("x2 - x1", 3).unwrap());
    let x2 = Multivector::term(3, &[0, 1], parse("x3", 3).unwrap());
    let beta = x3.d_phi(&phi).add(&x2.mul_poly(&phi));
    println!("input beta = {beta}");

    assert!(matches!(check_hamiltonian(&beta, &phi), HamiltonianCheck::Ok));
    let d = decompose(&beta, &phi).unwrap();
    println!("\ndecomposition (all identities re-verified: {}):", d.residual_check);
    println!("  X1 = {}", d.x1);
    println!("  X2 = {}", d.x2);
    println!("  X3 = {}", d.x3);

    let reassembled = d.x3.d_phi(&phi).add(&d.x2.mul_poly(&phi));
    assert_eq!(reassembled, beta);
    println!("reassembly d_phi(X3) + phi*X2 equals the input exactly");

    // d_phi(X3) is determined by the bracket modulo phi; the input X3 and
    // the canonical one differ only by a phi-multiple after d_phi.
    let drift = d.x3.d_phi(&phi).sub(&x3.d_phi(&phi));
    for (_, c) in drift.terms() {
        assert!(c.exact_div(&phi).is_some());
    }
    println!("d_phi(X3' - X3) is phi-divisible coefficientwise");

    // Any alternative X2 still gives an extension of the same bracket.
    let alt = Multivector::term(3, &[1, 2], parse("x1*x2 - 1", 3).unwrap());
    let tilted = freedom_in_x2(&d, &phi, &alt);
    println!("\nwith an arbitrary X2~: beta~ = {tilted}");
    for (_, c) in tilted.sub(&beta).terms() {
        assert!(c.exact_div(&phi).is_some());
    }
    println!("beta~ - beta is phi-divisible: same bracket on the surface");
}
