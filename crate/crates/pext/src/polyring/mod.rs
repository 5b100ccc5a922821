//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are sparse maps from monomials to nonzero `BigRational`
//! coefficients, with the ambient number of variables carried explicitly so
//! the zero polynomial keeps its dimension. The canonical term order is
//! graded reverse lexicographic with `x1 > x2 > ... > xn`; printing and the
//! default Gröbner order both use it.
//!
//! Variables are indexed `0..dim` internally; all text interfaces (the
//! parser, `Display`) use the 1-based names `x1, x2, ...`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

mod parse;

pub use parse::{parse, ParseError};

/// Exact rational coefficient. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of a single monomial. Length equals the ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The constant monomial `1` in `dim` variables.
    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    /// The monomial `x_i` (0-based index).
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable index {i} out of range for dimension {dim}");
        let mut exps = vec![0; dim];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Whether `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides exactly.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Weighted degree under positive integer weights.
    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        debug_assert_eq!(weights.len(), self.dim());
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }
}

/// Graded reverse lexicographic order with `x1 > x2 > ... > xn`.
///
/// This is the intrinsic `Ord`; `BTreeMap<Monomial, _>` therefore iterates
/// grevlex-ascending and printing walks it in reverse.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.dim(), other.dim());
        let (da, db) = (self.total_degree(), other.total_degree());
        if da != db {
            return da.cmp(&db);
        }
        // Equal degree: the larger monomial has the smaller last differing
        // exponent.
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Poly::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(dim), c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(dim: usize, i: usize) -> Self {
        let mut p = Poly::zero(dim);
        p.terms.insert(Monomial::var(dim, i), Rational::one());
        p
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Grevlex-ascending iteration over the stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.dim))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Leading term under the intrinsic grevlex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.dim, other.dim, "dimension mismatch in mul");
        let mut out = Poly::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.dim);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to `x_i` (0-based).
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.dim, "variable index {i} out of range");
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::from_exps(exps), c * rat(e as i64));
        }
        out
    }

    /// Division with remainder by a single divisor: `self = q*d + r` where no
    /// term of `r` is divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        assert_eq!(self.dim, d.dim, "dimension mismatch in div_rem");
        let (dm, dc) = d.leading().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut work = self.clone();
        let mut quot = Poly::zero(self.dim);
        let mut rem = Poly::zero(self.dim);
        while let Some((wm, wc)) = work.leading() {
            match wm.div(&dm) {
                Some(q) => {
                    let qc = wc / &dc;
                    quot.add_term(q.clone(), qc.clone());
                    work = work.sub(&d.mul_monomial(&q, &qc));
                }
                None => {
                    let (wm, wc) = (wm.clone(), wc.clone());
                    rem.add_term(wm.clone(), wc.clone());
                    let mut lead = Poly::zero(self.dim);
                    lead.add_term(wm, wc);
                    work = work.sub(&lead);
                }
            }
        }
        (quot, rem)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        assert_eq!(self.dim, d.dim, "dimension mismatch in exact_div");
        let (dm, dc) = d.leading().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.dim);
        while let Some((rm, rc)) = rem.leading() {
            let q = rm.div(&dm)?;
            let qc = rc / &dc;
            quot.add_term(q.clone(), qc.clone());
            rem = rem.sub(&d.mul_monomial(&q, &qc));
        }
        Some(quot)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim, "evaluation point has wrong length");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Common weighted degree of all terms, if one exists. Zero polynomial
    /// reports `Some(0)` by convention.
    pub fn weighted_degree(&self, weights: &[u64]) -> Option<u64> {
        assert_eq!(weights.len(), self.dim, "weights have wrong length");
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            None => return Some(0),
            Some(m) => m.weighted_degree(weights),
        };
        for m in iter {
            if m.weighted_degree(weights) != first {
                return None;
            }
        }
        Some(first)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Poly {
        parse(text, n).unwrap()
    }

    #[test]
    fn grevlex_ordering() {
        // In grevlex with x1 > x2 > x3: x1^2 > x1*x2 > x2^2 > x1*x3 > x2*x3 > x3^2.
        let order = [
            "x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2",
        ];
        for w in order.windows(2) {
            let a = p(w[0], 3).leading().unwrap().0.clone();
            let b = p(w[1], 3).leading().unwrap().0.clone();
            assert!(a > b, "{} should beat {}", w[0], w[1]);
        }
    }

    #[test]
    fn arithmetic_examples() {
        let a = p("x1 + x2", 3);
        let b = p("x1 - x2", 3);
        assert_eq!(a.mul(&b), p("x1^2 - x2^2", 3));

        let q = p("x1^2 + x2^2 + x3^2", 3);
        assert_eq!(q.add(&q.negate()), Poly::zero(3));
        assert_eq!(q.mul(&p("x1", 3)), p("x1^3 + x1*x2^2 + x1*x3^2", 3));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x1^2*x2", 3).partial(0), p("2*x1*x2", 3));
        assert_eq!(p("x1^2+x2^2+x3^2", 3).partial(2), p("2*x3", 3));
        assert_eq!(p("5", 3).partial(1), Poly::zero(3));
    }

    #[test]
    fn exact_division() {
        let q = p("x1^2+x2^2+x3^2", 3);
        let prod = q.mul(&p("x1", 3));
        assert_eq!(prod.exact_div(&q), Some(p("x1", 3)));
        assert_eq!(p("x1", 3).exact_div(&q), None);
        assert_eq!(Poly::zero(3).exact_div(&q), Some(Poly::zero(3)));
        // Non-divisible despite compatible leading terms.
        assert_eq!(p("x1^2 + 1", 3).exact_div(&p("x1", 3)), None);
    }

    #[test]
    fn div_rem_consistency() {
        let d = p("x1^2 + x2", 3);
        let a = p("x1^4*x3 - x2*x3 + x1 + 5", 3);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        // Remainder-free division agrees with exact_div.
        let multiple = d.mul(&p("x1*x2 - 7", 3));
        let (q2, r2) = multiple.div_rem(&d);
        assert!(r2.is_zero());
        assert_eq!(multiple.exact_div(&d), Some(q2));
        assert!(a.exact_div(&d).is_none());
        assert!(!r.is_zero());
    }

    #[test]
    fn evaluation() {
        let q = p("x1^2+x2^2+x3^2", 3);
        let pt = [rat(1), rat(0), rat(0)];
        assert_eq!(q.evaluate(&pt), rat(1));
        assert_eq!(Poly::zero(3).evaluate(&pt), rat(0));
        let s = p("x1*x2 - x3", 3);
        assert_eq!(s.evaluate(&[rat(2), rat(3), rat(6)]), rat(0));
    }

    #[test]
    fn weighted_degrees() {
        let a2 = p("x1^3+x2^2+x3^2", 3);
        assert_eq!(a2.weighted_degree(&[2, 3, 3]), Some(6));
        assert_eq!(p("x1+x1^2", 1).weighted_degree(&[1]), None);
        assert_eq!(Poly::zero(3).weighted_degree(&[1, 1, 1]), Some(0));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p("x1^2+x2^2+x3^2", 3).to_string(), "x1^2 + x2^2 + x3^2");
        assert_eq!(p("1/2*x1*x2 - x3", 3).to_string(), "1/2*x1*x2 - x3");
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!(p("-x1 + 2", 2).to_string(), "-x1 + 2");
    }
}
