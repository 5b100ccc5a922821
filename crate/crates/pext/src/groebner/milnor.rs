//! Milnor numbers of hypersurface singularities via standard monomials of
//! the Jacobian ideal.
//!
//! `mu = dim Q[x]/J_phi` is finite exactly when the singular locus of
//! `V(phi)` is zero-dimensional; the partials then form a regular sequence
//! and the Koszul complex they drive is exact away from the end. That
//! finiteness check is the precondition certificate consumed by the
//! extension pipeline.

use crate::polyring::{Monomial, Poly};

use super::{buchberger, GroebnerError, MonomialOrder};

/// Isolatedness certificate for the singularities of `V(phi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorData {
    pub is_isolated: bool,
    /// `None` marks an infinite Milnor algebra (non-isolated locus).
    pub milnor_number: Option<u64>,
    /// Monomial basis of the Milnor algebra, grevlex-ascending. Empty when
    /// the algebra is infinite-dimensional.
    pub standard_monomials: Vec<Monomial>,
}

/// Compute the Milnor data of a nonconstant polynomial.
///
/// The Gröbner basis of the Jacobian ideal is taken in grevlex; the standard
/// monomials are those divisible by no leading monomial of the basis. The
/// count is finite iff every variable has a pure power among the leading
/// monomials.
pub fn milnor(phi: &Poly) -> Result<MilnorData, GroebnerError> {
    if phi.is_constant() {
        return Err(GroebnerError::ConstantInput);
    }
    let dim = phi.dim();
    let partials: Vec<Poly> = (0..dim).map(|i| phi.partial(i)).collect();
    let gb = buchberger(&partials, MonomialOrder::Grevlex)?;
    let leads = gb.leading_monomials();

    // Finite iff each variable is capped by a pure power x_i^{d_i}.
    let mut bounds = vec![None; dim];
    for lm in &leads {
        let support: Vec<usize> = lm
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        if lm.is_one() {
            // Unit ideal: smooth hypersurface, Milnor algebra is zero.
            return Ok(MilnorData {
                is_isolated: true,
                milnor_number: Some(0),
                standard_monomials: Vec::new(),
            });
        }
        if let [i] = support[..] {
            let e = lm.exps()[i];
            let slot: &mut Option<u32> = &mut bounds[i];
            *slot = Some(slot.map_or(e, |b| b.min(e)));
        }
    }
    if bounds.iter().any(|b| b.is_none()) {
        return Ok(MilnorData {
            is_isolated: false,
            milnor_number: None,
            standard_monomials: Vec::new(),
        });
    }
    let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();

    let mut standard = Vec::new();
    let mut exps = vec![0u32; dim];
    loop {
        let m = Monomial::from_exps(exps.clone());
        if !leads.iter().any(|lm| lm.divides(&m)) {
            standard.push(m);
        }
        // Advance the multi-radix counter over the box.
        let mut i = 0;
        loop {
            if i == dim {
                standard.sort();
                return Ok(MilnorData {
                    is_isolated: true,
                    milnor_number: Some(standard.len() as u64),
                    standard_monomials: standard,
                });
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    fn mu(text: &str, n: usize) -> MilnorData {
        milnor(&parse(text, n).unwrap()).unwrap()
    }

    #[test]
    fn a1_quadric() {
        let d = mu("x1^2 + x2^2 + x3^2", 3);
        assert!(d.is_isolated);
        assert_eq!(d.milnor_number, Some(1));
        assert_eq!(d.standard_monomials, vec![Monomial::one(3)]);
    }

    #[test]
    fn a2_cusp() {
        let d = mu("x1^3 + x2^2 + x3^2", 3);
        assert_eq!(d.milnor_number, Some(2));
        assert_eq!(
            d.standard_monomials,
            vec![Monomial::one(3), Monomial::var(3, 0)]
        );
    }

    #[test]
    fn non_isolated_line() {
        let d = mu("x1^2*x2", 3);
        assert!(!d.is_isolated);
        assert_eq!(d.milnor_number, None);
    }

    #[test]
    fn smooth_surface_is_mu_zero() {
        let d = mu("x1 + x2^2 + x3^2", 3);
        assert!(d.is_isolated);
        assert_eq!(d.milnor_number, Some(0));
    }

    #[test]
    fn d4_and_e7_match_classical_values() {
        assert_eq!(mu("x1^3 + x1*x2^2 + x3^2", 3).milnor_number, Some(4));
        assert_eq!(mu("x1^3 + x1*x2^3 + x3^2", 3).milnor_number, Some(7));
    }

    #[test]
    fn constant_rejected() {
        assert!(milnor(&parse("5", 3).unwrap()).is_err());
        assert!(milnor(&Poly::zero(3)).is_err());
    }
}
