//! Extend the Poisson bracket of the quadric cone x1^2 + x2^2 + x3^2 = 0
//! to all of 3-space and certify the result.
//!
//! ```bash
//! cargo run --example extend_quadric
//! ```

use pext::extension::{casimir_check, extend_dim3};
use pext::exterior::schouten;
use pext::polyring::{parse, Poly};

fn main() {
    let phi = parse("x1^2 + x2^2 + x3^2", 3).unwrap();
    println!("surface: phi = {phi}");

    for f_text in ["1", "x1", "x1*x2 - x3"] {
        let f = parse(f_text, 3).unwrap();
        let result = extend_dim3(&phi, &f).unwrap();
        println!("\nf = {f_text}");
        println!("  beta       = {}", result.beta);
        println!("  [beta,beta] = {}", result.jacobi_witness);
        println!("  is_poisson = {}", result.is_poisson);
        println!("  phi is a Casimir: {}", casimir_check(&result.beta, &phi));
        assert!(result.is_poisson);
        assert!(schouten(&result.beta, &result.beta).is_zero());
    }

    // The zero coefficient gives the zero bracket, trivially Poisson.
    let zero = extend_dim3(&phi, &Poly::zero(3)).unwrap();
    assert!(zero.beta.is_zero() && zero.is_poisson);
    println!("\nf = 0 gives the zero bracket (trivially Poisson)");
}
