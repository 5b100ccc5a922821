//! Milnor numbers via standard monomials of the Jacobian ideal: the
//! isolated-singularity certificate behind every lift in this crate.
//!
//! ```bash
//! cargo run --example milnor_numbers
//! ```

use pext::cli::corpus;
use pext::groebner::milnor;
use pext::polyring::parse;

fn main() {
    println!("{:<9} {:<28} {:>6}  standard monomials", "name", "phi", "mu");
    for entry in corpus::CORPUS {
        let data = milnor(&entry.phi_poly()).unwrap();
        let monomials: Vec<String> = data
            .standard_monomials
            .iter()
            .map(|m| m.to_string())
            .collect();
        println!(
            "{:<9} {:<28} {:>6}  {{{}}}",
            entry.name,
            entry.phi,
            data.milnor_number.unwrap(),
            monomials.join(", ")
        );
        assert_eq!(data.milnor_number, Some(entry.expected_milnor));
    }

    // A non-isolated example: the singular locus of x1^2*x2 contains the
    // whole x2-axis, so the Milnor algebra is infinite-dimensional.
    let whitney = parse("x1^2*x2", 3).unwrap();
    let data = milnor(&whitney).unwrap();
    println!(
        "\nx1^2*x2 is {} (mu = {:?})",
        if data.is_isolated {
            "isolated"
        } else {
            "NOT isolated"
        },
        data.milnor_number
    );
    assert!(!data.is_isolated);
}
