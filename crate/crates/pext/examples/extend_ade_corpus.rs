//! Run the dimension-3 Poisson extension over the whole ADE corpus:
//! every simple surface singularity admits an exact Poisson extension
//! with phi as Casimir, for any coefficient f.
//!
//! ```bash
//! cargo run --example extend_ade_corpus
//! ```

use pext::cli::corpus;
use pext::extension::{casimir_check, extend_dim3};
use pext::polyring::{parse, Poly};

fn main() {
    let f = parse("x1 + x2", 3).unwrap();
    println!("{:<5} {:<28} {:>3}  poisson  casimir", "name", "phi", "mu");
    for entry in corpus::surface_entries() {
        let phi = entry.phi_poly();
        let at_one = extend_dim3(&phi, &Poly::one(3)).unwrap();
        let at_f = extend_dim3(&phi, &f).unwrap();
        let casimir = casimir_check(&at_one.beta, &phi) && casimir_check(&at_f.beta, &phi);
        println!(
            "{:<5} {:<28} {:>3}  {:<7}  {}",
            entry.name,
            entry.phi,
            entry.expected_milnor,
            at_one.is_poisson && at_f.is_poisson,
            casimir
        );
        assert!(at_one.is_poisson && at_f.is_poisson && casimir);
    }
    println!("\nall corpus extensions are Poisson with phi as Casimir");
}
