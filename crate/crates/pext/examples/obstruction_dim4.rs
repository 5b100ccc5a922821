//! The dimension-4 obstruction: for beta = d_phi(X3) + phi*X2 to extend a
//! bracket, [X3, d_phi X3] = -2 D(X3) ^ d_phi(X3) must be <phi>-valued.
//! Both the wedge shortcut and the general module-membership route are
//! evaluated and must agree.
//!
//! ```bash
//! cargo run --example obstruction_dim4
//! ```

use pext::extension::{obstruction_dim4, obstruction_general};
use pext::exterior::Multivector;
use pext::polyring::parse;

fn main() {
    let phi = parse("x1^2 + x2^2 + x3^2 + x4^2", 4).unwrap();
    println!("hypersurface: phi = {phi}\n");

    let candidates = [
        ("constant", Multivector::basis(4, &[0, 1, 2])),
        (
            "phi-scaled",
            Multivector::term(4, &[0, 1, 3], phi.clone()),
        ),
        (
            "generic",
            Multivector::term(4, &[0, 1, 2], parse("x4^2", 4).unwrap()).add(
                &Multivector::term(4, &[0, 2, 3], parse("x1*x2", 4).unwrap()),
            ),
        ),
    ];

    for (label, x3) in candidates {
        let quick = obstruction_dim4(&x3, &phi).unwrap();
        let general = obstruction_general(&x3, &phi).unwrap();
        assert_eq!(quick.satisfied, general.satisfied);

        println!("X3 ({label}) = {x3}");
        println!("  [X3, d_phi X3] = {}", quick.bracket_term);
        println!("  satisfied: {}", quick.satisfied);
        match (&general.witness, &general.residue) {
            (Some(w), _) => {
                println!("  witness Y4 = {}", w.y4);
                println!("  witness Y5 = {}", w.y5);
                let rebuilt = w.y5.d_phi(&phi).add(&w.y4.mul_poly(&phi));
                assert_eq!(rebuilt, quick.bracket_term);
            }
            (None, Some(res)) => {
                println!("  non-membership residue = {res}");
                assert!(!res.is_zero());
            }
            _ => unreachable!("report carries a witness or a residue"),
        }
        println!();
    }
}
