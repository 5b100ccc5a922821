//! Gröbner bases with representation tracking, for ideals of the polynomial
//! ring and for submodules of free modules.
//!
//! Everything runs over exact rationals. The ideal case is the rank-1
//! special case of the module algorithm, so there is a single Buchberger
//! loop. Every basis element carries cofactors expressing it as a
//! polynomial combination of the original generators; membership answers
//! from [`module_solve`] are re-substituted before being returned and
//! canonicalized by reduction against a Gröbner basis of the syzygy module.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::polyring::{Monomial, Poly, Rational};

mod milnor;

pub use milnor::{milnor, MilnorData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("empty or all-zero generating set")]
    EmptyInput,
    #[error("constant polynomial has no singularity data")]
    ConstantInput,
    #[error("free-module elements have mismatched ranks: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("mismatched ambient dimensions: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Term orders on monomials. All are total, multiplicative and well-founded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    GradedLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::GradedLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| lex_cmp(a, b)),
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps().iter().zip(b.exps()) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

/// Tie-break between module positions relative to the term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PositionPolicy {
    /// Compare positions first (`e_1 > e_2 > ...`), then monomials.
    #[default]
    PositionOverTerm,
    /// Compare monomials first, positions break ties.
    TermOverPosition,
}

/// Monomial order on a free module `R^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ModuleOrder {
    pub term: MonomialOrder,
    pub position: PositionPolicy,
}

impl ModuleOrder {
    /// Compare module terms `(position, monomial)`. Lower position index is
    /// greater under position-over-term.
    pub fn cmp_terms(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self.position {
            PositionPolicy::PositionOverTerm => b
                .0
                .cmp(&a.0)
                .then_with(|| self.term.cmp(a.1, b.1)),
            PositionPolicy::TermOverPosition => self
                .term
                .cmp(a.1, b.1)
                .then_with(|| b.0.cmp(&a.0)),
        }
    }
}

/// Element of a free module `R^rank` over the polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModuleElement {
    components: Vec<Poly>,
}

impl FreeModuleElement {
    pub fn new(components: Vec<Poly>) -> Self {
        assert!(!components.is_empty(), "rank must be positive");
        let dim = components[0].dim();
        assert!(
            components.iter().all(|p| p.dim() == dim),
            "components must share ambient dimension"
        );
        FreeModuleElement { components }
    }

    pub fn zero(rank: usize, dim: usize) -> Self {
        FreeModuleElement {
            components: vec![Poly::zero(dim); rank],
        }
    }

    /// Standard basis vector `e_pos` scaled by `p`.
    pub fn unit(rank: usize, pos: usize, p: Poly) -> Self {
        let dim = p.dim();
        let mut v = Self::zero(rank, dim);
        v.components[pos] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        FreeModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        FreeModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        FreeModuleElement {
            components: self.components.iter().map(|c| c.mul(p)).collect(),
        }
    }

    fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        FreeModuleElement {
            components: self
                .components
                .iter()
                .map(|p| p.mul_monomial(m, c))
                .collect(),
        }
    }

    fn scale(&self, c: &Rational) -> Self {
        FreeModuleElement {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Greatest term `(position, monomial, coefficient)` under `order`.
    fn lead(&self, order: &ModuleOrder) -> Option<(usize, Monomial, Rational)> {
        let mut best: Option<(usize, Monomial, Rational)> = None;
        for (pos, p) in self.components.iter().enumerate() {
            let lead = match order.term {
                MonomialOrder::Grevlex => p.leading().map(|(m, c)| (m.clone(), c.clone())),
                _ => p
                    .terms()
                    .max_by(|(a, _), (b, _)| order.term.cmp(a, b))
                    .map(|(m, c)| (m.clone(), c.clone())),
            };
            if let Some((m, c)) = lead {
                let better = match &best {
                    None => true,
                    Some((bp, bm, _)) => {
                        order.cmp_terms((pos, &m), (*bp, bm)) == Ordering::Greater
                    }
                };
                if better {
                    best = Some((pos, m, c));
                }
            }
        }
        best
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A basis element together with its cofactors over the original input.
#[derive(Clone)]
struct Tracked {
    vec: FreeModuleElement,
    cof: Vec<Poly>,
    lead: (usize, Monomial),
}

/// Result of dividing a vector by a list of basis vectors.
struct Division {
    remainder: FreeModuleElement,
    quotients: Vec<Poly>,
}

/// Multivariate division: `target = sum quotients[i] * basis[i] + remainder`,
/// no term of the remainder reducible by any basis lead. Deterministic for a
/// fixed basis order.
fn divide(
    target: &FreeModuleElement,
    basis: &[Tracked],
    order: &ModuleOrder,
) -> Division {
    let dim = target.dim();
    let rank = target.rank();
    let mut rem = FreeModuleElement::zero(rank, dim);
    let mut quotients = vec![Poly::zero(dim); basis.len()];
    let mut work = target.clone();
    'outer: while let Some((pos, mono, coeff)) = work.lead(order) {
        for (bi, b) in basis.iter().enumerate() {
            if b.lead.0 != pos {
                continue;
            }
            if let Some(q) = mono.div(&b.lead.1) {
                // Basis elements are monic, so the quotient coefficient is
                // the bare target coefficient.
                quotients[bi].add_term(q.clone(), coeff.clone());
                work = work.sub(&b.vec.mul_monomial(&q, &coeff));
                continue 'outer;
            }
        }
        // Irreducible lead: move it to the remainder.
        let mut moved = Poly::zero(dim);
        moved.add_term(mono.clone(), coeff.clone());
        let unit = FreeModuleElement::unit(rank, pos, moved);
        rem = rem.add(&unit);
        work = work.sub(&unit);
    }
    Division {
        remainder: rem,
        quotients,
    }
}

/// Core Buchberger loop on tracked vectors. Input vectors need not be
/// monic or nonzero; zero inputs are skipped (their cofactor columns stay
/// empty). `track` controls whether cofactors are maintained.
fn buchberger_tracked(
    columns: &[FreeModuleElement],
    order: &ModuleOrder,
    track: bool,
) -> Vec<Tracked> {
    let ncols = columns.len();
    let dim = columns
        .iter()
        .map(|c| c.dim())
        .next()
        .expect("at least one column");
    let rank1 = columns.iter().all(|c| c.rank() == 1);

    let mut basis: Vec<Tracked> = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        if col.is_zero() {
            continue;
        }
        let cof = if track {
            let mut cof = vec![Poly::zero(dim); ncols];
            cof[i] = Poly::one(dim);
            cof
        } else {
            Vec::new()
        };
        basis.push(normalize(col.clone(), cof, order));
    }

    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push_back((i, j));
        }
    }

    while let Some((i, j)) = pairs.pop_front() {
        let (pi, mi) = basis[i].lead.clone();
        let (pj, mj) = basis[j].lead.clone();
        if pi != pj {
            continue;
        }
        // Product criterion: for rank 1, coprime leads reduce to zero.
        if rank1 && mi.lcm(&mj) == mi.mul(&mj) {
            continue;
        }
        let lcm = mi.lcm(&mj);
        let ui = lcm.div(&mi).expect("lcm divisible");
        let uj = lcm.div(&mj).expect("lcm divisible");
        let one = Rational::one();
        let s_vec = basis[i]
            .vec
            .mul_monomial(&ui, &one)
            .sub(&basis[j].vec.mul_monomial(&uj, &one));
        let s_cof = if track {
            basis[i]
                .cof
                .iter()
                .zip(&basis[j].cof)
                .map(|(a, b)| a.mul_monomial(&ui, &one).sub(&b.mul_monomial(&uj, &one)))
                .collect()
        } else {
            Vec::new()
        };
        let div = divide(&s_vec, &basis, order);
        if div.remainder.is_zero() {
            continue;
        }
        let cof = if track {
            let mut cof = s_cof;
            for (bi, q) in div.quotients.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (c, bc) in cof.iter_mut().zip(&basis[bi].cof) {
                    *c = c.sub(&bc.mul(q));
                }
            }
            cof
        } else {
            Vec::new()
        };
        let new = normalize(div.remainder, cof, order);
        let new_idx = basis.len();
        basis.push(new);
        for k in 0..new_idx {
            pairs.push_back((k, new_idx));
        }
    }

    reduce_basis(basis, order, track)
}

fn normalize(vec: FreeModuleElement, cof: Vec<Poly>, order: &ModuleOrder) -> Tracked {
    let (pos, mono, coeff) = vec.lead(order).expect("normalize of zero vector");
    let inv = Rational::one() / coeff;
    let vec = vec.scale(&inv);
    let cof = cof.iter().map(|p| p.scale(&inv)).collect();
    Tracked {
        vec,
        cof,
        lead: (pos, mono),
    }
}

/// Minimalize and tail-reduce to the unique reduced basis, sorted by
/// descending lead term.
fn reduce_basis(basis: Vec<Tracked>, order: &ModuleOrder, track: bool) -> Vec<Tracked> {
    // Minimal subset: drop any element whose lead is divisible by the lead
    // of a kept element. Ascending scan keeps the divisor side.
    let mut sorted: Vec<Tracked> = basis;
    sorted.sort_by(|a, b| {
        order
            .cmp_terms((a.lead.0, &a.lead.1), (b.lead.0, &b.lead.1))
    });
    let mut kept: Vec<Tracked> = Vec::new();
    for t in sorted {
        let redundant = kept
            .iter()
            .any(|k| k.lead.0 == t.lead.0 && k.lead.1.divides(&t.lead.1));
        if !redundant {
            kept.push(t);
        }
    }
    // Tail reduction: leads are pairwise non-divisible, so one pass settles.
    let mut reduced: Vec<Tracked> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Tracked> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t.clone())
            .collect();
        let div = divide(&kept[i].vec, &others, order);
        let cof = if track {
            let mut cof = kept[i].cof.clone();
            for (bi, q) in div.quotients.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (c, bc) in cof.iter_mut().zip(&others[bi].cof) {
                    *c = c.sub(&bc.mul(q));
                }
            }
            cof
        } else {
            Vec::new()
        };
        reduced.push(normalize(div.remainder, cof, order));
    }
    reduced.sort_by(|a, b| {
        order
            .cmp_terms((b.lead.0, &b.lead.1), (a.lead.0, &a.lead.1))
    });
    reduced
}

/// Reduced Gröbner basis of an ideal, with cofactors over the original
/// generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    generators: Vec<Poly>,
    order: MonomialOrder,
    original: Vec<Poly>,
    cofactors: Vec<Vec<Poly>>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn original_generators(&self) -> &[Poly] {
        &self.original
    }

    /// Row `b` expresses `generators[b]` over `original_generators`.
    pub fn cofactor_matrix(&self) -> &[Vec<Poly>] {
        &self.cofactors
    }

    pub fn dim(&self) -> usize {
        self.original[0].dim()
    }

    /// Leading monomials of the basis under its order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let morder = ModuleOrder {
            term: self.order,
            position: PositionPolicy::PositionOverTerm,
        };
        self.generators
            .iter()
            .map(|g| {
                FreeModuleElement::new(vec![g.clone()])
                    .lead(&morder)
                    .expect("basis elements are nonzero")
                    .1
            })
            .collect()
    }

    /// Check the cofactor identity `generators[b] = sum cofactors[b][g] * original[g]`.
    pub fn verify_cofactors(&self) -> bool {
        self.generators.iter().zip(&self.cofactors).all(|(g, row)| {
            let mut acc = Poly::zero(self.dim());
            for (c, o) in row.iter().zip(&self.original) {
                acc = acc.add(&c.mul(o));
            }
            acc == *g
        })
    }

    pub fn contains(&self, p: &Poly) -> bool {
        normal_form(p, self).is_zero()
    }
}

/// Buchberger's algorithm for ideals. Returns the reduced basis.
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    if gens.is_empty() || gens.iter().all(|g| g.is_zero()) {
        return Err(GroebnerError::EmptyInput);
    }
    let dim = gens[0].dim();
    for g in gens {
        if g.dim() != dim {
            return Err(GroebnerError::DimensionMismatch(dim, g.dim()));
        }
    }
    let columns: Vec<FreeModuleElement> = gens
        .iter()
        .map(|g| FreeModuleElement::new(vec![g.clone()]))
        .collect();
    let morder = ModuleOrder {
        term: order,
        position: PositionPolicy::PositionOverTerm,
    };
    let tracked = buchberger_tracked(&columns, &morder, true);
    Ok(GroebnerBasis {
        generators: tracked
            .iter()
            .map(|t| t.vec.component(0).clone())
            .collect(),
        order,
        original: gens.to_vec(),
        cofactors: tracked.into_iter().map(|t| t.cof).collect(),
    })
}

/// Canonical remainder of `p` modulo the basis.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    normal_form_with_cofactors(p, gb).0
}

/// Remainder plus cofactors over the *original* generators:
/// `p = sum cof[g] * original[g] + remainder`.
pub fn normal_form_with_cofactors(p: &Poly, gb: &GroebnerBasis) -> (Poly, Vec<Poly>) {
    assert_eq!(p.dim(), gb.dim(), "dimension mismatch in normal_form");
    let morder = ModuleOrder {
        term: gb.order,
        position: PositionPolicy::PositionOverTerm,
    };
    let basis: Vec<Tracked> = gb
        .generators
        .iter()
        .map(|g| {
            let vec = FreeModuleElement::new(vec![g.clone()]);
            let lead = vec.lead(&morder).map(|(p, m, _)| (p, m)).unwrap();
            Tracked {
                vec,
                cof: Vec::new(),
                lead,
            }
        })
        .collect();
    let div = divide(&FreeModuleElement::new(vec![p.clone()]), &basis, &morder);
    let dim = p.dim();
    let mut over_original = vec![Poly::zero(dim); gb.original.len()];
    for (bi, q) in div.quotients.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        for (acc, c) in over_original.iter_mut().zip(&gb.cofactors[bi]) {
            *acc = acc.add(&c.mul(q));
        }
    }
    (div.remainder.component(0).clone(), over_original)
}

/// Reduced Gröbner basis of a submodule of `R^rank`, with each basis element
/// expressed over the original columns.
#[derive(Debug, Clone)]
pub struct ModuleGB {
    generators: Vec<FreeModuleElement>,
    order: ModuleOrder,
    original: Vec<FreeModuleElement>,
    representation: Vec<Vec<Poly>>,
    rank: usize,
    dim: usize,
}

impl ModuleGB {
    pub fn generators(&self) -> &[FreeModuleElement] {
        &self.generators
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn original_columns(&self) -> &[FreeModuleElement] {
        &self.original
    }

    pub fn representation_matrix(&self) -> &[Vec<Poly>] {
        &self.representation
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn verify_representation(&self) -> bool {
        self.generators
            .iter()
            .zip(&self.representation)
            .all(|(g, row)| {
                let mut acc = FreeModuleElement::zero(self.rank, self.dim);
                for (c, o) in row.iter().zip(&self.original) {
                    acc = acc.add(&o.mul_poly(c));
                }
                acc == *g
            })
    }

    /// Canonical remainder of `target` modulo this basis.
    pub fn reduce(&self, target: &FreeModuleElement) -> FreeModuleElement {
        self.reduce_with_quotients(target).0
    }

    fn tracked(&self) -> Vec<Tracked> {
        self.generators
            .iter()
            .map(|g| {
                let lead = g.lead(&self.order).map(|(p, m, _)| (p, m)).unwrap();
                Tracked {
                    vec: g.clone(),
                    cof: Vec::new(),
                    lead,
                }
            })
            .collect()
    }

    fn reduce_with_quotients(
        &self,
        target: &FreeModuleElement,
    ) -> (FreeModuleElement, Vec<Poly>) {
        assert_eq!(target.rank(), self.rank, "rank mismatch in reduce");
        if self.generators.is_empty() {
            return (target.clone(), Vec::new());
        }
        let div = divide(target, &self.tracked(), &self.order);
        (div.remainder, div.quotients)
    }
}

/// Buchberger's algorithm for submodules of a free module.
pub fn module_buchberger(
    columns: &[FreeModuleElement],
    order: ModuleOrder,
) -> Result<ModuleGB, GroebnerError> {
    let rank = check_ranks(columns)?;
    let dim = columns[0].dim();
    let nonzero = columns.iter().any(|c| !c.is_zero());
    let tracked = if nonzero {
        buchberger_tracked(columns, &order, true)
    } else {
        Vec::new()
    };
    Ok(ModuleGB {
        generators: tracked.iter().map(|t| t.vec.clone()).collect(),
        order,
        original: columns.to_vec(),
        representation: tracked.into_iter().map(|t| t.cof).collect(),
        rank,
        dim,
    })
}

fn check_ranks(columns: &[FreeModuleElement]) -> Result<usize, GroebnerError> {
    let rank = match columns.first() {
        None => return Err(GroebnerError::EmptyInput),
        Some(c) => c.rank(),
    };
    for c in columns {
        if c.rank() != rank {
            return Err(GroebnerError::RankMismatch(rank, c.rank()));
        }
        if c.dim() != columns[0].dim() {
            return Err(GroebnerError::DimensionMismatch(columns[0].dim(), c.dim()));
        }
    }
    Ok(rank)
}

/// Gröbner basis of the syzygy module of `columns`, i.e. of all `u` with
/// `sum u_i * columns[i] = 0`, as a submodule of `R^{columns.len()}`.
///
/// Computed by the standard elimination trick: augment each column with a
/// tag component and intersect the resulting basis with the pure-tag block.
pub fn syzygy_basis(
    columns: &[FreeModuleElement],
) -> Result<Vec<FreeModuleElement>, GroebnerError> {
    let rank = check_ranks(columns)?;
    let dim = columns[0].dim();
    let m = columns.len();
    let augmented: Vec<FreeModuleElement> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut comps = c.components().to_vec();
            comps.extend((0..m).map(|j| {
                if j == i {
                    Poly::one(dim)
                } else {
                    Poly::zero(dim)
                }
            }));
            FreeModuleElement::new(comps)
        })
        .collect();
    let order = ModuleOrder::default();
    let tracked = buchberger_tracked(&augmented, &order, false);
    let mut syzygies = Vec::new();
    for t in tracked {
        if t.vec.components()[..rank].iter().all(|p| p.is_zero()) {
            syzygies.push(FreeModuleElement::new(
                t.vec.components()[rank..].to_vec(),
            ));
        }
    }
    Ok(syzygies)
}

/// Decide membership of `target` in the submodule generated by `columns`.
///
/// Returns coefficients `u` with `sum u_i * columns[i] = target` exactly, or
/// `None` when the target is certifiably outside the submodule. The returned
/// coefficient vector is canonical: any particular solution is reduced
/// against the Gröbner basis of the syzygy module, so equal inputs always
/// produce identical output. The identity is re-checked by substitution
/// before returning.
pub fn module_solve(
    columns: &[FreeModuleElement],
    target: &FreeModuleElement,
) -> Result<Option<Vec<Poly>>, GroebnerError> {
    let rank = check_ranks(columns)?;
    if target.rank() != rank {
        return Err(GroebnerError::RankMismatch(rank, target.rank()));
    }
    let dim = columns[0].dim();
    let gb = module_buchberger(columns, ModuleOrder::default())?;
    let (rem, quotients) = gb.reduce_with_quotients(target);
    if !rem.is_zero() {
        return Ok(None);
    }
    let mut u = vec![Poly::zero(dim); columns.len()];
    for (bi, q) in quotients.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        for (acc, c) in u.iter_mut().zip(&gb.representation[bi]) {
            *acc = acc.add(&c.mul(q));
        }
    }
    // Canonicalize modulo the syzygies of the original columns.
    let syz = syzygy_basis(columns)?;
    if !syz.is_empty() {
        let syz_gb = module_buchberger(&syz, ModuleOrder::default())?;
        u = syz_gb
            .reduce(&FreeModuleElement::new(u))
            .components()
            .to_vec();
    }
    // Soundness: the certificate must reproduce the target exactly.
    let mut check = FreeModuleElement::zero(rank, dim);
    for (c, col) in u.iter().zip(columns) {
        check = check.add(&col.mul_poly(c));
    }
    assert!(
        check == *target,
        "module_solve certificate failed re-substitution"
    );
    Ok(Some(u))
}
