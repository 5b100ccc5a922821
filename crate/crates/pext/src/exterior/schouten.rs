//! The Schouten–Nijenhuis bracket on polyvector fields and its companions.
//!
//! The bracket is the unique Gerstenhaber extension of the Lie bracket with
//! `[V, f] = V(f)` and `[f, g] = 0`. It is computed by the odd-coordinate
//! formula
//!
//! ```text
//! [P, Q] = sum_i dR_i(P) ^ dx_i(Q)  -  (-1)^((p-1)(q-1)) sum_i dR_i(Q) ^ dx_i(P)
//! ```
//!
//! where `dR_i` is the right slot-derivative on the exterior algebra and
//! `dx_i` differentiates the polynomial coefficients. Under this convention
//! a bivector `pi` is Poisson iff `[pi, pi] = 0`, and the Hamiltonian field
//! of `f` is `d_pi(f) = -[f, pi] = pi(f, .)`.
//!
//! [`schouten_via_koszul`] evaluates the divergence-generated formula
//! `[A, B] = (-1)^k D(A^B) - D(A)^B - (-1)^k A^D(B)` with `k = deg B`; with
//! the transported divergence it reproduces [`schouten`] exactly (global
//! sign constant +1, measured by the `koszul-formula` suite).

use std::collections::BTreeMap;

use crate::polyring::Poly;

use super::{add_into, Multivector};

/// Right derivative in the `i`-th odd slot: kills terms without `i`,
/// otherwise removes it with sign `(-1)^(k-l)` for 1-based position `l`.
fn slot_derivative(mv: &Multivector, i: usize) -> Multivector {
    if mv.degree == 0 {
        return Multivector::zero(mv.dim, 0);
    }
    let k = mv.degree;
    let mut out = Multivector::zero(mv.dim, k - 1);
    for (j, coeff) in &mv.terms {
        if let Some(l) = j.position(i) {
            let t = if (k - 1 - l) % 2 == 1 {
                coeff.negate()
            } else {
                coeff.clone()
            };
            add_into(&mut out.terms, j.remove_at(l), t);
        }
    }
    out
}

/// Coefficientwise partial derivative, degree unchanged.
fn coeff_partial(mv: &Multivector, i: usize) -> Multivector {
    let mut out = Multivector::zero(mv.dim, mv.degree);
    for (j, coeff) in &mv.terms {
        add_into(&mut out.terms, j.clone(), coeff.partial(i));
    }
    out
}

fn star(a: &Multivector, b: &Multivector) -> Multivector {
    let degree = (a.degree + b.degree).saturating_sub(1).min(a.dim);
    let mut acc = Multivector::zero(a.dim, degree);
    for i in 0..a.dim {
        let da = slot_derivative(a, i);
        if da.is_zero() {
            continue;
        }
        let db = coeff_partial(b, i);
        if db.is_zero() {
            continue;
        }
        acc = acc.add(&da.wedge(&db));
    }
    acc
}

/// Schouten–Nijenhuis bracket of multivectors of degrees `p` and `q`,
/// producing degree `p + q - 1`.
pub fn schouten(a: &Multivector, b: &Multivector) -> Multivector {
    assert_eq!(a.dim, b.dim, "dimension mismatch in schouten");
    let (p, q) = (a.degree, b.degree);
    let t1 = star(a, b);
    let t2 = star(b, a);
    // Graded antisymmetry sign (-1)^((p-1)(q-1)).
    if (p + 1) * (q + 1) % 2 == 0 {
        t1.sub(&t2)
    } else {
        t1.add(&t2)
    }
}

/// Koszul's divergence formula for the bracket, kept as an independent
/// cross-check of [`schouten`]. The exponent reads the degree of the second
/// argument.
pub fn schouten_via_koszul(a: &Multivector, b: &Multivector) -> Multivector {
    assert_eq!(a.dim, b.dim, "dimension mismatch in schouten_via_koszul");
    let k = b.degree;
    let t1 = a.wedge(b).divergence();
    let t2 = a.divergence().wedge(b);
    let t3 = a.wedge(&b.divergence());
    if k % 2 == 1 {
        t1.negate().sub(&t2).add(&t3)
    } else {
        t1.sub(&t2).sub(&t3)
    }
}

/// Lichnerowicz–Poisson differential `d_pi(A) = -[A, pi]`. When `pi` is
/// Poisson this squares to zero; on functions it returns the Hamiltonian
/// vector field `pi(f, .)`.
pub fn lichnerowicz_d(a: &Multivector, pi: &Multivector) -> Multivector {
    assert_eq!(pi.degree(), 2, "lichnerowicz_d needs a bivector");
    schouten(a, pi).negate()
}

/// Jacobi data of a bivector: the bracket square `[pi, pi]` together with
/// the generator triple-sums
/// `Jac(x_i, x_j, x_k) = pi(x_i, pi(x_j, x_k)) + cyclic`.
///
/// The two vanish together; termwise,
/// `Jac(x_i, x_j, x_k) = 1/2 * [pi, pi]_(i,j,k)` under this crate's bracket
/// convention (the constant is asserted by the `jacobiator` suite).
pub fn jacobiator(
    pi: &Multivector,
) -> (Multivector, BTreeMap<(usize, usize, usize), Poly>) {
    assert_eq!(pi.degree(), 2, "jacobiator needs a bivector");
    let n = pi.dim();
    let square = schouten(pi, pi);
    let mut sums = BTreeMap::new();
    let vars: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let jac = pi
                    .apply_bivector(&vars[i], &pi.apply_bivector(&vars[j], &vars[k]))
                    .add(&pi.apply_bivector(&vars[j], &pi.apply_bivector(&vars[k], &vars[i])))
                    .add(&pi.apply_bivector(&vars[k], &pi.apply_bivector(&vars[i], &vars[j])));
                sums.insert((i, j, k), jac);
            }
        }
    }
    (square, sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::MultiIndex;
    use crate::polyring::{parse, rat, ratio, Poly};

    fn p(text: &str, n: usize) -> Poly {
        parse(text, n).unwrap()
    }

    fn quadric_beta() -> Multivector {
        // 2x3 d1^d2 - 2x2 d1^d3 + 2x1 d2^d3, the dim-3 extension at f = 1.
        Multivector::basis(3, &[0, 1, 2]).d_phi(&p("x1^2 + x2^2 + x3^2", 3))
    }

    #[test]
    fn lie_bracket_of_vector_fields() {
        let d1 = Multivector::basis(3, &[0]);
        let v = Multivector::term(3, &[1], p("x1", 3));
        assert_eq!(schouten(&d1, &v), Multivector::basis(3, &[1]));

        // [V, W] for V = x2 d1, W = x1 d2: classical result x1 d1 - x2 d2...
        // computed: V(x1) d2 - W(x2) d1 = x2 d2 - x1 d1.
        let v = Multivector::term(3, &[0], p("x2", 3));
        let w = Multivector::term(3, &[1], p("x1", 3));
        let expect = Multivector::term(3, &[1], p("x2", 3))
            .sub(&Multivector::term(3, &[0], p("x1", 3)));
        assert_eq!(schouten(&v, &w), expect);
    }

    #[test]
    fn action_on_functions() {
        let d1 = Multivector::basis(3, &[0]);
        let f = Multivector::from_poly(p("x1^2*x3 + x2", 3));
        assert_eq!(
            schouten(&d1, &f),
            Multivector::from_poly(p("2*x1*x3", 3))
        );
        // [f, g] = 0.
        let g = Multivector::from_poly(p("x1*x2", 3));
        assert!(schouten(&f, &g).is_zero());
        // Graded antisymmetry at (1,0): [f, V] = -V(f).
        assert_eq!(
            schouten(&f, &d1),
            Multivector::from_poly(p("2*x1*x3", 3)).negate()
        );
    }

    #[test]
    fn quadric_bracket_is_poisson() {
        let beta = quadric_beta();
        assert!(schouten(&beta, &beta).is_zero());
    }

    #[test]
    fn graded_antisymmetry_and_leibniz_samples() {
        let a = Multivector::term(3, &[0, 1], p("x1*x3", 3));
        let b = Multivector::term(3, &[2], p("x2^2", 3));
        let c = Multivector::term(3, &[1], p("x1 - 1", 3));

        // [A, B] = -(-1)^((p-1)(q-1)) [B, A] with p = 2, q = 1.
        assert_eq!(schouten(&a, &b), schouten(&b, &a).negate());

        // Leibniz: [A, B ^ C] = [A, B] ^ C + (-1)^((p-1) q) B ^ [A, C].
        let lhs = schouten(&a, &b.wedge(&c));
        let rhs = schouten(&a, &b)
            .wedge(&c)
            .sub(&b.wedge(&schouten(&a, &c)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_jacobi_sample() {
        let a = Multivector::term(3, &[0], p("x2", 3));
        let b = Multivector::term(3, &[1, 2], p("x1", 3));
        let c = Multivector::term(3, &[1], p("x3", 3));
        let (pa, qb, rc) = (1i64, 2i64, 1i64);
        let s1 = (pa - 1) * (rc - 1);
        let s2 = (qb - 1) * (pa - 1);
        let s3 = (rc - 1) * (qb - 1);
        let t1 = schouten(&a, &schouten(&b, &c));
        let t2 = schouten(&b, &schouten(&c, &a));
        let t3 = schouten(&c, &schouten(&a, &b));
        let sgn = |s: i64, m: Multivector| if s % 2 == 0 { m } else { m.negate() };
        let total = sgn(s1, t1).add(&sgn(s2, t2)).add(&sgn(s3, t3));
        assert!(total.is_zero());
    }

    #[test]
    fn koszul_formula_matches_direct_bracket() {
        let pairs = [
            (
                Multivector::basis(3, &[0]),
                Multivector::term(3, &[1], p("x1", 3)),
            ),
            (
                Multivector::term(3, &[0, 1], p("x1*x2", 3)),
                Multivector::term(3, &[2], p("x3^2 - x1", 3)),
            ),
            (
                Multivector::term(3, &[0, 1, 2], p("x2", 3)),
                Multivector::term(3, &[0, 1], p("x1 + x3", 3)),
            ),
            (
                Multivector::from_poly(p("x1*x3", 3)),
                Multivector::term(3, &[0, 2], p("x2", 3)),
            ),
        ];
        for (a, b) in pairs {
            assert_eq!(schouten_via_koszul(&a, &b), schouten(&a, &b));
        }
        // Constant coefficients: everything vanishes.
        let a = Multivector::basis(4, &[0, 1]);
        let b = Multivector::basis(4, &[2, 3]);
        assert!(schouten_via_koszul(&a, &b).is_zero());
        assert!(schouten(&a, &b).is_zero());
    }

    #[test]
    fn lichnerowicz_on_functions_is_hamiltonian_field() {
        let beta = quadric_beta();
        let f = p("x1", 3);
        let h = lichnerowicz_d(&Multivector::from_poly(f.clone()), &beta);
        // pi(f, .) = sum_m (sum_l pi_lm f_l) d_m for the quadric bracket:
        // pi(x1, .) = 2x3 d2 - 2x2 d3.
        let expect = Multivector::term(3, &[1], p("2*x3", 3))
            .sub(&Multivector::term(3, &[2], p("2*x2", 3)));
        assert_eq!(h, expect);

        // d_pi squared vanishes for a Poisson bivector.
        let a = Multivector::term(3, &[0], p("x2*x3", 3));
        assert!(lichnerowicz_d(&lichnerowicz_d(&a, &beta), &beta).is_zero());
        assert!(lichnerowicz_d(&beta.clone(), &beta).is_zero());
    }

    #[test]
    fn jacobiator_on_poisson_and_constant_bivectors() {
        let constant = Multivector::basis(3, &[0, 1]);
        let (sq, sums) = jacobiator(&constant);
        assert!(sq.is_zero());
        assert!(sums.values().all(|s| s.is_zero()));

        let (sq, sums) = jacobiator(&quadric_beta());
        assert!(sq.is_zero());
        assert!(sums.values().all(|s| s.is_zero()));
    }

    #[test]
    fn jacobiator_constant_is_one_half() {
        // Generic-coefficient bivector: every triple-sum must equal half of
        // the matching coefficient of [pi, pi].
        let pi = Multivector::term(3, &[0, 1], p("x1*x2 + x3", 3))
            .add(&Multivector::term(3, &[0, 2], p("x2^2 - 1", 3)))
            .add(&Multivector::term(3, &[1, 2], p("x1 - 2*x3", 3)));
        let (sq, sums) = jacobiator(&pi);
        assert!(!sq.is_zero());
        for ((i, j, k), jac) in &sums {
            let coeff = sq.coeff(&MultiIndex::new(&[*i, *j, *k]));
            assert_eq!(jac, &coeff.scale(&ratio(1, 2)), "triple {i},{j},{k}");
        }
    }

    #[test]
    fn dim4_bracket_identity_with_divergence() {
        // [X3, d_phi X3] = -2 D(X3) ^ d_phi X3 in dimension 4.
        let phi = p("x1^2 + x2^2 + x3^2 + x4^2", 4);
        let samples = [
            Multivector::term(4, &[0, 1, 2], p("x4^2", 4)),
            Multivector::term(4, &[0, 1, 3], p("x1*x3", 4)).add(&Multivector::term(
                4,
                &[1, 2, 3],
                p("x2 - x4", 4),
            )),
        ];
        for x3 in samples {
            let dphix3 = x3.d_phi(&phi);
            let lhs = schouten(&x3, &dphix3);
            let rhs = x3.divergence().wedge(&dphix3).scale(&rat(-2));
            assert_eq!(lhs, rhs);
        }
    }
}
