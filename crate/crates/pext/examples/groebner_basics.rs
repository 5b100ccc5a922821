//! The Gröbner layer on its own: reduced bases with cofactors, normal
//! forms, module membership with certified coefficients, and the syzygy
//! reduction that makes solutions canonical.
//!
//! ```bash
//! cargo run --example groebner_basics
//! ```

use pext::groebner::{
    buchberger, module_solve, normal_form_with_cofactors, syzygy_basis, FreeModuleElement,
    MonomialOrder,
};
use pext::polyring::{parse, Poly};

fn main() {
    // Reduced basis of the Jacobian ideal of the D4 equation.
    let phi = parse("x1^3 + x1*x2^2 + x3^2", 3).unwrap();
    let partials: Vec<Poly> = (0..3).map(|i| phi.partial(i)).collect();
    let gb = buchberger(&partials, MonomialOrder::Grevlex).unwrap();
    println!("J_phi for phi = {phi}");
    for g in gb.generators() {
        println!("  basis element: {g}");
    }
    assert!(gb.verify_cofactors());
    println!("cofactor identities verified\n");

    // Normal form with certified ideal membership.
    let member = partials[0]
        .mul(&parse("x2 - 5", 3).unwrap())
        .add(&partials[2].mul(&parse("x1*x3", 3).unwrap()));
    let (remainder, cofactors) = normal_form_with_cofactors(&member, &gb);
    assert!(remainder.is_zero());
    println!("membership certificate for an ideal element:");
    for (c, g) in cofactors.iter().zip(&partials) {
        if !c.is_zero() {
            println!("  ({c}) * ({g})");
        }
    }

    // Module membership: x1*x2*e lies in <x2*e, x1*e>, with a canonical
    // coefficient vector after syzygy reduction.
    let cols = [
        FreeModuleElement::unit(1, 0, parse("x2", 2).unwrap()),
        FreeModuleElement::unit(1, 0, parse("x1", 2).unwrap()),
    ];
    let target = FreeModuleElement::unit(1, 0, parse("x1*x2", 2).unwrap());
    let u = module_solve(&cols, &target).unwrap().unwrap();
    println!("\nmodule membership: x1*x2 = ({}) * x2 + ({}) * x1", u[0], u[1]);

    let syz = syzygy_basis(&cols).unwrap();
    println!("syzygies of (x2, x1):");
    for s in &syz {
        println!("  {s}");
    }
    assert_eq!(syz.len(), 1);
}
