//! Property tests for the polynomial kernel: ring axioms, the Leibniz rule,
//! division round trips, evaluation as a ring homomorphism, and the
//! parse/print identity.

use proptest::prelude::*;

use pext::polyring::{parse, rat, Monomial, Poly, Rational};

fn arb_poly(dim: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, dim), -9i64..=9),
        0..5,
    )
    .prop_map(move |terms| {
        let mut p = Poly::zero(dim);
        for (exps, c) in terms {
            p.add_term(Monomial::from_exps(exps), rat(c));
        }
        p
    })
}

fn arb_point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), dim)
        .prop_map(|pairs| pairs.into_iter().map(|(n, d)| rat(n) / rat(d)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.negate()), Poly::zero(3));
    }

    #[test]
    fn leibniz_rule(a in arb_poly(3), b in arb_poly(3)) {
        for i in 0..3 {
            let lhs = a.mul(&b).partial(i);
            let rhs = a.partial(i).mul(&b).add(&a.mul(&b.partial(i)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exact_division_round_trip(a in arb_poly(3), d in arb_poly(3)) {
        prop_assume!(!d.is_zero());
        let product = a.mul(&d);
        let q = product.exact_div(&d);
        prop_assert_eq!(q.clone(), Some(a));
        prop_assert_eq!(q.unwrap().mul(&d), product);
    }

    #[test]
    fn div_rem_reconstructs(a in arb_poly(3), d in arb_poly(3)) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in arb_poly(3),
        b in arb_poly(3),
        pt in arb_point(3),
    ) {
        prop_assert_eq!(a.mul(&b).evaluate(&pt), a.evaluate(&pt) * b.evaluate(&pt));
        prop_assert_eq!(a.add(&b).evaluate(&pt), a.evaluate(&pt) + b.evaluate(&pt));
    }

    #[test]
    fn parse_print_identity(a in arb_poly(3)) {
        let text = a.to_string();
        let back = parse(&text, 3).unwrap();
        prop_assert_eq!(back, a);
    }
}
