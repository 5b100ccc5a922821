//! Polyvector fields, differential forms, and the operators connecting them.
//!
//! A degree-`k` multivector is a sum of terms `f * d_{i1}^...^d_{ik}` over
//! strictly increasing multi-indices; differential forms use the dual basis
//! `dx_{i1}^...^dx_{ik}`. Both live over the exact polynomial ring.
//!
//! Sign conventions, fixed once and validated by the identity suites:
//!
//! - `d_phi` is the interior product with `d(phi)`: on a basis k-vector it
//!   alternates `(-1)^(l-1)` over the removed slot (1-based `l`).
//! - `flat` is contraction into the volume form `nu = dx1^...^dxn`, pinned
//!   by `<flat(A), B> = <nu, A^B>`; `sharp` is its exact inverse.
//! - `divergence` is the transport of the de Rham differential through
//!   `flat`/`sharp`. On a basis k-vector the slot signs alternate
//!   `(-1)^(k-l)`; this is the convention under which the divergence
//!   generates the Schouten bracket through Koszul's formula.
//!
//! `flat . d_phi = (-1)^(n+1) koszul_d . flat` holds exactly (the sign is
//! asserted by the `intertwining` suite), and all four differentials square
//! to zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::polyring::{Poly, Rational};

mod schouten;

pub use schouten::{jacobiator, lichnerowicz_d, schouten, schouten_via_koszul};

/// Strictly increasing tuple of 0-based variable indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn single(i: usize) -> Self {
        MultiIndex(vec![i as u8])
    }

    /// Build from strictly increasing indices.
    pub fn new(indices: &[usize]) -> Self {
        let v: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        assert!(
            v.windows(2).all(|w| w[0] < w[1]),
            "multi-index must be strictly increasing"
        );
        MultiIndex(v)
    }

    /// Sort arbitrary distinct indices, reporting whether the permutation is
    /// odd. `None` when an index repeats.
    pub fn from_unsorted(indices: &[usize]) -> Option<(Self, bool)> {
        let mut v: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        let mut neg = false;
        // Insertion sort, counting swaps.
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                neg = !neg;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((MultiIndex(v), neg))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&(i as u8)).is_ok()
    }

    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&(i as u8)).ok()
    }

    pub fn remove_at(&self, l: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(l);
        MultiIndex(v)
    }

    /// Complement in `{0..n}`, increasing.
    pub fn complement(&self, n: usize) -> MultiIndex {
        MultiIndex(
            (0..n as u8)
                .filter(|i| self.0.binary_search(i).is_err())
                .collect(),
        )
    }

    /// Concatenate-and-sort: `None` on overlap, otherwise the merged index
    /// and whether the shuffle sign is negative (odd inversion count).
    pub fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, bool)> {
        let mut inversions = 0usize;
        for &a in &self.0 {
            for &b in &other.0 {
                if a == b {
                    return None;
                }
                if a > b {
                    inversions += 1;
                }
            }
        }
        let mut v: Vec<u8> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        Some((MultiIndex(v), inversions % 2 == 1))
    }

    /// All increasing `k`-subsets of `{0..n}` in lexicographic order — the
    /// canonical basis enumeration of degree-`k` multivectors.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut current: Vec<u8> = (0..k as u8).collect();
        loop {
            out.push(MultiIndex(current.clone()));
            // Next combination.
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if current[i] < (n - k + i) as u8 {
                    current[i] += 1;
                    for j in (i + 1)..k {
                        current[j] = current[j - 1] + 1;
                    }
                    break;
                }
            }
            if k == 0 {
                return out;
            }
        }
    }
}

type TermMap = BTreeMap<MultiIndex, Poly>;

fn add_into(map: &mut TermMap, key: MultiIndex, p: Poly) {
    if p.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(p);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().add(&p);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn wedge_maps(a: &TermMap, b: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (ja, pa) in a {
        for (jb, pb) in b {
            if let Some((j, neg)) = ja.merge(jb) {
                let prod = pa.mul(pb);
                add_into(&mut out, j, if neg { prod.negate() } else { prod });
            }
        }
    }
    out
}

fn display_graded(
    f: &mut fmt::Formatter<'_>,
    terms: &TermMap,
    token: impl Fn(usize) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (j, p) in terms {
        let body = if j.is_empty() {
            p.to_string()
        } else {
            let basis: Vec<String> = j.iter().map(&token).collect();
            let basis = basis.join("^");
            match p.to_string().as_str() {
                "1" => basis,
                "-1" => format!("-{basis}"),
                text if p.num_terms() == 1 => format!("{text} {basis}"),
                text => format!("({text}) {basis}"),
            }
        };
        if first {
            write!(f, "{body}")?;
            first = false;
        } else if let Some(rest) = body.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {body}")?;
        }
    }
    Ok(())
}

/// Degree-`k` polyvector field with polynomial coefficients on the basis
/// `d_{i1}^...^d_{ik}` of wedges of coordinate partials.
#[derive(Clone, Eq, Debug)]
pub struct Multivector {
    dim: usize,
    degree: usize,
    terms: TermMap,
}

/// Zero multivectors compare equal regardless of their nominal degree; a
/// nonzero multivector determines its degree from its multi-indices.
impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms
    }
}

impl Multivector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Multivector {
            dim,
            degree: degree.min(dim),
            terms: TermMap::new(),
        }
    }

    /// Degree-0 multivector (a function).
    pub fn from_poly(p: Poly) -> Self {
        let dim = p.dim();
        let mut terms = TermMap::new();
        if !p.is_zero() {
            terms.insert(MultiIndex::empty(), p);
        }
        Multivector {
            dim,
            degree: 0,
            terms,
        }
    }

    /// Basis multivector `d_{i1}^...^d_{ik}` for strictly increasing 0-based
    /// indices.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Self::term(dim, indices, Poly::one(dim))
    }

    /// `coeff * d_{i1}^...^d_{ik}` for strictly increasing 0-based indices.
    pub fn term(dim: usize, indices: &[usize], coeff: Poly) -> Self {
        assert!(indices.iter().all(|&i| i < dim), "index out of range");
        assert_eq!(coeff.dim(), dim);
        let j = MultiIndex::new(indices);
        let degree = j.len();
        let mut terms = TermMap::new();
        if !coeff.is_zero() {
            terms.insert(j, coeff);
        }
        Multivector { dim, degree, terms }
    }

    pub fn from_terms<I>(dim: usize, degree: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Poly)>,
    {
        let mut mv = Multivector::zero(dim, degree);
        for (j, p) in entries {
            assert_eq!(j.len(), mv.degree, "mixed degrees in multivector");
            add_into(&mut mv.terms, j, p);
        }
        mv
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, j: &MultiIndex) -> Poly {
        self.terms
            .get(j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        debug_assert!(
            self.is_zero() || other.is_zero() || self.degree == other.degree,
            "degree mismatch in add"
        );
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let mut terms = self.terms.clone();
        for (j, p) in &other.terms {
            add_into(&mut terms, j.clone(), p.clone());
        }
        Multivector {
            dim: self.dim,
            degree,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        Multivector {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(j, p)| (j.clone(), p.negate()))
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        if p.is_zero() {
            return Multivector::zero(self.dim, self.degree);
        }
        Multivector {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(j, q)| (j.clone(), q.mul(p)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_poly(&Poly::constant(self.dim, c.clone()))
    }

    /// Exterior product. Degrees add; exceeding the dimension gives zero.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in wedge");
        let degree = (self.degree + other.degree).min(self.dim);
        Multivector {
            dim: self.dim,
            degree,
            terms: wedge_maps(&self.terms, &other.terms),
        }
    }

    /// Koszul differential: interior product with `d(phi)`, lowering degree
    /// by one. Squares to zero.
    pub fn d_phi(&self, phi: &Poly) -> Multivector {
        assert_eq!(self.dim, phi.dim(), "dimension mismatch in d_phi");
        if self.degree == 0 {
            return Multivector::zero(self.dim, 0);
        }
        let grads: Vec<Poly> = (0..self.dim).map(|i| phi.partial(i)).collect();
        let mut out = Multivector::zero(self.dim, self.degree - 1);
        for (j, coeff) in &self.terms {
            for (l, i) in j.iter().enumerate() {
                if grads[i].is_zero() {
                    continue;
                }
                let mut t = coeff.mul(&grads[i]);
                if l % 2 == 1 {
                    t = t.negate();
                }
                add_into(&mut out.terms, j.remove_at(l), t);
            }
        }
        out
    }

    /// Divergence operator: the de Rham differential transported through
    /// the volume-form duality, `sharp . d . flat`. Implemented directly
    /// with slot signs `(-1)^(k-l)` and cross-checked against the transport
    /// by the `divergence-transport` suite. Squares to zero.
    pub fn divergence(&self) -> Multivector {
        if self.degree == 0 {
            return Multivector::zero(self.dim, 0);
        }
        let k = self.degree;
        let mut out = Multivector::zero(self.dim, k - 1);
        for (j, coeff) in &self.terms {
            for (l, i) in j.iter().enumerate() {
                let d = coeff.partial(i);
                if d.is_zero() {
                    continue;
                }
                let t = if (k - 1 - l) % 2 == 1 { d.negate() } else { d };
                add_into(&mut out.terms, j.remove_at(l), t);
            }
        }
        out
    }

    /// Volume-form duality `flat(A)`, the (n-k)-form with
    /// `<flat(A), B> = <nu, A^B>` for every (n-k)-vector `B`.
    pub fn flat(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, self.dim - self.degree);
        for (j, coeff) in &self.terms {
            let comp = j.complement(self.dim);
            let (_, neg) = j.merge(&comp).expect("complement is disjoint");
            let t = if neg { coeff.negate() } else { coeff.clone() };
            add_into(&mut out.terms, comp, t);
        }
        out
    }

    /// Apply a bivector to a pair of functions as a bi-derivation.
    pub fn apply_bivector(&self, f: &Poly, g: &Poly) -> Poly {
        assert_eq!(self.degree, 2, "apply_bivector needs a bivector");
        let mut acc = Poly::zero(self.dim);
        for (j, c) in &self.terms {
            let idx: Vec<usize> = j.iter().collect();
            let (a, b) = (idx[0], idx[1]);
            let term = f.partial(a).mul(&g.partial(b)).sub(&f.partial(b).mul(&g.partial(a)));
            acc = acc.add(&c.mul(&term));
        }
        acc
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        display_graded(f, &self.terms, |i| format!("d{}", i + 1))
    }
}

/// Degree-`k` differential form with polynomial coefficients on the basis
/// `dx_{i1}^...^dx_{ik}`.
#[derive(Clone, Eq, Debug)]
pub struct DiffForm {
    dim: usize,
    degree: usize,
    terms: TermMap,
}

impl PartialEq for DiffForm {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms
    }
}

impl DiffForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        DiffForm {
            dim,
            degree: degree.min(dim),
            terms: TermMap::new(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let dim = p.dim();
        let mut terms = TermMap::new();
        if !p.is_zero() {
            terms.insert(MultiIndex::empty(), p);
        }
        DiffForm {
            dim,
            degree: 0,
            terms,
        }
    }

    pub fn term(dim: usize, indices: &[usize], coeff: Poly) -> Self {
        assert!(indices.iter().all(|&i| i < dim), "index out of range");
        let j = MultiIndex::new(indices);
        let degree = j.len();
        let mut terms = TermMap::new();
        if !coeff.is_zero() {
            terms.insert(j, coeff);
        }
        DiffForm { dim, degree, terms }
    }

    /// The volume form `nu = dx1^...^dxn`.
    pub fn volume(dim: usize) -> Self {
        let all: Vec<usize> = (0..dim).collect();
        DiffForm::term(dim, &all, Poly::one(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, j: &MultiIndex) -> Poly {
        self.terms
            .get(j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let mut terms = self.terms.clone();
        for (j, p) in &other.terms {
            add_into(&mut terms, j.clone(), p.clone());
        }
        DiffForm {
            dim: self.dim,
            degree,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        DiffForm {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(j, p)| (j.clone(), p.negate()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let p = Poly::constant(self.dim, c.clone());
        DiffForm {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(j, q)| (j.clone(), q.mul(&p)))
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in wedge");
        let degree = (self.degree + other.degree).min(self.dim);
        DiffForm {
            dim: self.dim,
            degree,
            terms: wedge_maps(&self.terms, &other.terms),
        }
    }

    /// The usual de Rham differential `d(f dx^J) = sum_i f_i dx_i ^ dx^J`.
    pub fn de_rham_d(&self) -> DiffForm {
        let degree = (self.degree + 1).min(self.dim);
        let mut out = DiffForm::zero(self.dim, degree);
        for (j, coeff) in &self.terms {
            for i in 0..self.dim {
                let d = coeff.partial(i);
                if d.is_zero() {
                    continue;
                }
                if let Some((m, neg)) = MultiIndex::single(i).merge(j) {
                    add_into(&mut out.terms, m, if neg { d.negate() } else { d });
                }
            }
        }
        out
    }

    /// Koszul differential on forms: right wedge with `d(phi)`.
    pub fn koszul_d(&self, phi: &Poly) -> DiffForm {
        assert_eq!(self.dim, phi.dim(), "dimension mismatch in koszul_d");
        let dphi = DiffForm::from_poly(phi.clone()).de_rham_d();
        self.wedge(&dphi)
    }

    /// Inverse of [`Multivector::flat`].
    pub fn sharp(&self) -> Multivector {
        let mut out = Multivector::zero(self.dim, self.dim - self.degree);
        for (m, coeff) in &self.terms {
            let j = m.complement(self.dim);
            let (_, neg) = j.merge(m).expect("complement is disjoint");
            let t = if neg { coeff.negate() } else { coeff.clone() };
            add_into(&mut out.terms, j, t);
        }
        out
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        display_graded(f, &self.terms, |i| format!("dx{}", i + 1))
    }
}
