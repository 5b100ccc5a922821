//! Bounded search for a Jacobi-closing X2 in dimension 4.
//!
//! Extending a bracket beta = d_phi(X3) + phi*X2 to a Poisson bracket is
//! equivalent to choosing X2 with [beta, beta] = 0. Whether such an X2
//! exists is open in general; this utility only scans a small constant-
//! coefficient grid, and it uses the obstruction verdict to prune: when
//! [X3, d_phi X3] is not <phi>-valued, no X2 whatsoever can work.
//!
//! ```bash
//! cargo run --release --example jacobi_search
//! ```

use pext::extension::obstruction_dim4;
use pext::exterior::{schouten, MultiIndex, Multivector};
use pext::polyring::{parse, rat, Poly};

fn constant_bivectors(dim: usize, values: &[i64]) -> Vec<Multivector> {
    let basis = MultiIndex::all(dim, 2);
    let mut out = vec![Multivector::zero(dim, 2)];
    for j in basis {
        let idx: Vec<usize> = j.iter().collect();
        let mut next = Vec::new();
        for mv in &out {
            for &v in values {
                let term = Multivector::term(dim, &idx, Poly::constant(dim, rat(v)));
                next.push(mv.add(&term));
            }
        }
        out = next;
    }
    out
}

fn search(x3: &Multivector, phi: &Poly, candidates: &[Multivector]) -> Option<Multivector> {
    let head = x3.d_phi(phi);
    candidates
        .iter()
        .find(|x2| {
            let beta = head.add(&x2.mul_poly(phi));
            schouten(&beta, &beta).is_zero()
        })
        .cloned()
}

fn main() {
    let phi = parse("x1^2 + x2^2 + x3^2 + x4^2", 4).unwrap();
    let candidates = constant_bivectors(4, &[-1, 0, 1]);
    println!(
        "scanning {} constant-coefficient X2 candidates over phi = {phi}\n",
        candidates.len()
    );

    let cases = [
        ("constant X3", Multivector::basis(4, &[0, 1, 2])),
        (
            "generic X3",
            Multivector::term(4, &[0, 1, 2], parse("x4", 4).unwrap()),
        ),
    ];

    for (label, x3) in cases {
        let report = obstruction_dim4(&x3, &phi).unwrap();
        println!("{label}: obstruction satisfied = {}", report.satisfied);
        if !report.satisfied {
            println!("  necessary condition fails: skipping the search\n");
            continue;
        }
        match search(&x3, &phi, &candidates) {
            Some(x2) => {
                println!("  found Jacobi-closing X2 = {x2}");
                let beta = x3.d_phi(&phi).add(&x2.mul_poly(&phi));
                assert!(schouten(&beta, &beta).is_zero());
                println!("  beta = {beta}\n");
            }
            None => {
                println!("  no candidate in the grid closes the Jacobi identity");
                println!("  (the search is bounded; this is not a non-existence proof)\n");
            }
        }
    }
}
