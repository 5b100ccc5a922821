//! Seeded randomized identity suites.
//!
//! Each suite draws its inputs from a ChaCha stream seeded with the given
//! seed, so a run is reproducible bit-for-bit. A failing case reports the
//! offending inputs as a reloadable problem-file fragment.
//!
//! The suites double as the property-test backbone: the acceptance tests
//! run them with pinned seeds and counts. Suites that cycle over ambient
//! dimensions or corpus equations do so round-robin in the case index, so
//! `count = k * cycle` exercises every member exactly `k` times.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::extension::{
    check_hamiltonian, decompose, extend_dim3, freedom_in_x2, koszul_preimage,
    obstruction_dim4, obstruction_general, casimir_check,
};
use crate::exterior::{
    jacobiator, lichnerowicz_d, schouten, schouten_via_koszul, DiffForm, MultiIndex, Multivector,
};
use crate::polyring::{parse, rat, ratio, Monomial, Poly};

use super::corpus;
use super::problem::mv_to_literal;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub case: usize,
    pub note: String,
    pub problem: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct CaseFailure {
    note: String,
    problem: serde_json::Value,
}

type CaseFn = fn(&mut ChaCha8Rng, usize) -> Result<(), CaseFailure>;

pub fn suite_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(name, _)| *name).collect()
}

pub fn run_suite(name: &str, seed: u64, count: usize) -> Option<SuiteOutcome> {
    let case_fn = REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..count {
        if let Err(f) = case_fn(&mut rng, case) {
            failures.push(Failure {
                case,
                note: f.note,
                problem: f.problem,
            });
        }
    }
    Some(SuiteOutcome {
        suite: name.to_string(),
        seed,
        cases: count,
        passes: count - failures.len(),
        failures,
    })
}

const REGISTRY: &[(&str, CaseFn)] = &[
    ("dphi-squared", case_dphi_squared),
    ("divergence-squared", case_divergence_squared),
    ("derham-squared", case_derham_squared),
    ("koszul-form-squared", case_koszul_form_squared),
    ("intertwining", case_intertwining),
    ("divergence-transport", case_divergence_transport),
    ("flat-sharp", case_flat_sharp),
    ("koszul-formula", case_koszul_formula),
    ("schouten-antisymmetry", case_schouten_antisymmetry),
    ("schouten-leibniz", case_schouten_leibniz),
    ("schouten-jacobi", case_schouten_jacobi),
    ("jacobiator", case_jacobiator),
    ("lichnerowicz-squared", case_lichnerowicz_squared),
    ("exactness", case_exactness),
    ("decompose-roundtrip", case_decompose_roundtrip),
    ("extend-dim3", case_extend_dim3),
    ("dim4-identity", case_dim4_identity),
    ("x2-freedom", case_x2_freedom),
];

// ---------------------------------------------------------------------
// Random generators (coefficient height <= 9 throughout).

pub fn random_poly(rng: &mut ChaCha8Rng, dim: usize, max_degree: u32, max_terms: usize) -> Poly {
    let terms = rng.gen_range(1..=max_terms);
    let mut p = Poly::zero(dim);
    for _ in 0..terms {
        let total = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; dim];
        for _ in 0..total {
            exps[rng.gen_range(0..dim)] += 1;
        }
        let mut c: i64 = rng.gen_range(-9..=9);
        if c == 0 {
            c = 1;
        }
        p.add_term(Monomial::from_exps(exps), rat(c));
    }
    p
}

pub fn random_multivector(
    rng: &mut ChaCha8Rng,
    dim: usize,
    degree: usize,
    coeff_degree: u32,
) -> Multivector {
    let mut mv = Multivector::zero(dim, degree);
    for j in MultiIndex::all(dim, degree) {
        if rng.gen_bool(0.7) {
            let idx: Vec<usize> = j.iter().collect();
            let coeff = random_poly(rng, dim, coeff_degree, 3);
            mv = mv.add(&Multivector::term(dim, &idx, coeff));
        }
    }
    mv
}

pub fn random_form(
    rng: &mut ChaCha8Rng,
    dim: usize,
    degree: usize,
    coeff_degree: u32,
) -> DiffForm {
    let mut w = DiffForm::zero(dim, degree);
    for j in MultiIndex::all(dim, degree) {
        if rng.gen_bool(0.7) {
            let idx: Vec<usize> = j.iter().collect();
            let coeff = random_poly(rng, dim, coeff_degree, 3);
            w = w.add(&DiffForm::term(dim, &idx, coeff));
        }
    }
    w
}

fn dim_cycle(case: usize) -> usize {
    2 + case % 3
}

/// An isolated-singularity equation for each supported dimension.
fn isolated_phi(dim: usize) -> Poly {
    let text = match dim {
        2 => "x1^2 + x2^2",
        3 => "x1^3 + x2^2 + x3^2",
        4 => "x1^2 + x2^2 + x3^2 + x4^2",
        _ => unreachable!("suites use dimensions 2..=4"),
    };
    parse(text, dim).unwrap()
}

fn mv_problem(n: usize, phi: &Poly, pairs: &[(&str, &Multivector)]) -> serde_json::Value {
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), json!(n));
    obj.insert("phi".into(), json!(phi.to_string()));
    for (key, mv) in pairs {
        obj.insert((*key).to_string(), serde_json::to_value(mv_to_literal(mv)).unwrap());
    }
    serde_json::Value::Object(obj)
}

// ---------------------------------------------------------------------
// Complex properties.

fn case_dphi_squared(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let phi = random_poly(rng, n, 3, 4);
    let k = rng.gen_range(1..=n);
    let a = random_multivector(rng, n, k, 3);
    if a.d_phi(&phi).d_phi(&phi).is_zero() {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("d_phi^2 != 0 on degree {k}"),
            problem: mv_problem(n, &phi, &[("A", &a)]),
        })
    }
}

fn case_divergence_squared(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let k = rng.gen_range(1..=n);
    let a = random_multivector(rng, n, k, 3);
    if a.divergence().divergence().is_zero() {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("divergence^2 != 0 on degree {k}"),
            problem: mv_problem(n, &Poly::zero(n), &[("A", &a)]),
        })
    }
}

fn case_derham_squared(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let k = rng.gen_range(0..=n);
    let w = random_form(rng, n, k, 3);
    if w.de_rham_d().de_rham_d().is_zero() {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("d^2 != 0 on a degree-{k} form"),
            problem: json!({"n": n, "form_degree": k, "form": w.to_string()}),
        })
    }
}

fn case_koszul_form_squared(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let phi = random_poly(rng, n, 3, 4);
    let k = rng.gen_range(0..=n);
    let w = random_form(rng, n, k, 3);
    if w.koszul_d(&phi).koszul_d(&phi).is_zero() {
        Ok(())
    } else {
        Err(CaseFailure {
            note: "(d^phi)^2 != 0".into(),
            problem: json!({"n": n, "phi": phi.to_string(), "form": w.to_string()}),
        })
    }
}

fn case_intertwining(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let phi = random_poly(rng, n, 3, 4);
    let k = rng.gen_range(1..=n);
    let a = random_multivector(rng, n, k, 3);
    let lhs = a.d_phi(&phi).flat();
    let mut rhs = a.flat().koszul_d(&phi);
    if (n + 1) % 2 == 1 {
        rhs = rhs.negate();
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("flat(d_phi A) != (-1)^(n+1) koszul_d(flat A) at n={n}"),
            problem: mv_problem(n, &phi, &[("A", &a)]),
        })
    }
}

fn case_divergence_transport(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let k = rng.gen_range(1..=n);
    let a = random_multivector(rng, n, k, 3);
    if a.divergence() == a.flat().de_rham_d().sharp() {
        Ok(())
    } else {
        Err(CaseFailure {
            note: "divergence differs from sharp . d . flat".into(),
            problem: mv_problem(n, &Poly::zero(n), &[("A", &a)]),
        })
    }
}

fn case_flat_sharp(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let k = rng.gen_range(0..=n);
    let a = random_multivector(rng, n, k, 3);
    if a.flat().sharp() == a {
        Ok(())
    } else {
        Err(CaseFailure {
            note: "sharp(flat(A)) != A".into(),
            problem: mv_problem(n, &Poly::zero(n), &[("A", &a)]),
        })
    }
}

// ---------------------------------------------------------------------
// Bracket properties.

fn case_koszul_formula(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let p = rng.gen_range(0..=n);
    let q = rng.gen_range(0..=(n - p));
    let a = random_multivector(rng, n, p, 2);
    let b = random_multivector(rng, n, q, 2);
    if schouten_via_koszul(&a, &b) == schouten(&a, &b) {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("Koszul formula disagrees with direct bracket at degrees ({p},{q})"),
            problem: mv_problem(n, &Poly::zero(n), &[("A", &a), ("B", &b)]),
        })
    }
}

fn case_schouten_antisymmetry(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let p = rng.gen_range(0..=n);
    let q = rng.gen_range(0..=(n.saturating_sub(p) + 1).min(n));
    let a = random_multivector(rng, n, p, 2);
    let b = random_multivector(rng, n, q, 2);
    let lhs = schouten(&a, &b);
    let mut rhs = schouten(&b, &a).negate();
    if (p + 1) * (q + 1) % 2 == 1 {
        rhs = rhs.negate();
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(CaseFailure {
            note: "graded antisymmetry failed".into(),
            problem: mv_problem(n, &Poly::zero(n), &[("A", &a), ("B", &b)]),
        })
    }
}

fn case_schouten_leibniz(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let p = rng.gen_range(0..=2.min(n));
    let q = rng.gen_range(0..=(n - p).min(2));
    let r = rng.gen_range(0..=(n - q).min(2));
    let a = random_multivector(rng, n, p, 2);
    let b = random_multivector(rng, n, q, 2);
    let c = random_multivector(rng, n, r, 2);
    let lhs = schouten(&a, &b.wedge(&c));
    let mut second = b.wedge(&schouten(&a, &c));
    if (p + 1) * q % 2 == 1 {
        second = second.negate();
    }
    let rhs = schouten(&a, &b).wedge(&c).add(&second);
    if lhs == rhs {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("graded Leibniz failed at degrees ({p},{q},{r})"),
            problem: mv_problem(n, &Poly::zero(n), &[("A", &a), ("B", &b), ("C", &c)]),
        })
    }
}

fn case_schouten_jacobi(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    // Triples of total degree <= n keep the bracket depth inside X^*.
    let p = rng.gen_range(0..=n);
    let q = rng.gen_range(0..=(n - p));
    let r = rng.gen_range(0..=(n - p - q));
    let a = random_multivector(rng, n, p, 2);
    let b = random_multivector(rng, n, q, 2);
    let c = random_multivector(rng, n, r, 2);
    let sgn = |e: usize, m: Multivector| if e % 2 == 1 { m.negate() } else { m };
    let t1 = sgn((p + 1) * (r + 1), schouten(&a, &schouten(&b, &c)));
    let t2 = sgn((q + 1) * (p + 1), schouten(&b, &schouten(&c, &a)));
    let t3 = sgn((r + 1) * (q + 1), schouten(&c, &schouten(&a, &b)));
    if t1.add(&t2).add(&t3).is_zero() {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("graded Jacobi failed at degrees ({p},{q},{r})"),
            problem: mv_problem(n, &Poly::zero(n), &[("A", &a), ("B", &b), ("C", &c)]),
        })
    }
}

fn case_jacobiator(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = 3 + case % 2;
    let pi = random_multivector(rng, n, 2, 2);
    let (square, sums) = jacobiator(&pi);
    let consistent = square.is_zero() == sums.values().all(|s| s.is_zero());
    if !consistent {
        return Err(CaseFailure {
            note: "bracket square and triple sums disagree on vanishing".into(),
            problem: mv_problem(n, &Poly::zero(n), &[("pi", &pi)]),
        });
    }
    for ((i, j, k), jac) in &sums {
        let coeff = square.coeff(&MultiIndex::new(&[*i, *j, *k]));
        if jac != &coeff.scale(&ratio(1, 2)) {
            return Err(CaseFailure {
                note: format!(
                    "triple sum at ({},{},{}) is not half the bracket-square coefficient",
                    i + 1,
                    j + 1,
                    k + 1
                ),
                problem: mv_problem(n, &Poly::zero(n), &[("pi", &pi)]),
            });
        }
    }
    Ok(())
}

fn case_lichnerowicz_squared(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let entries: Vec<_> = corpus::surface_entries().collect();
    let entry = entries[case % entries.len()];
    let phi = entry.phi_poly();
    let f = random_poly(rng, 3, 2, 3);
    let pi = extend_dim3(&phi, &f)
        .expect("corpus equations are isolated")
        .beta;
    let k = rng.gen_range(0..=2);
    let a = random_multivector(rng, 3, k, 2);
    let once = lichnerowicz_d(&a, &pi);
    if lichnerowicz_d(&once, &pi).is_zero() {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("d_pi^2 != 0 over {} with f = {}", entry.name, f),
            problem: mv_problem(3, &phi, &[("A", &a), ("pi", &pi)]),
        })
    }
}

fn case_exactness(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let n = dim_cycle(case);
    let phi = isolated_phi(n);
    let k = rng.gen_range(1..=n);
    let b = random_multivector(rng, n, k, 2);
    let target = b.d_phi(&phi);
    match koszul_preimage(&target, &phi, k) {
        Ok(Some(x)) if x.d_phi(&phi) == target => Ok(()),
        Ok(Some(_)) => Err(CaseFailure {
            note: "recovered preimage fails to map back".into(),
            problem: mv_problem(n, &phi, &[("B", &b)]),
        }),
        Ok(None) => Err(CaseFailure {
            note: "no preimage found for an exact cocycle".into(),
            problem: mv_problem(n, &phi, &[("B", &b)]),
        }),
        Err(e) => Err(CaseFailure {
            note: format!("koszul_preimage error: {e}"),
            problem: mv_problem(n, &phi, &[("B", &b)]),
        }),
    }
}

// ---------------------------------------------------------------------
// Pipeline properties.

fn case_decompose_roundtrip(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let names = ["A1", "A2", "A3"];
    let entry = corpus::entry(names[case % names.len()]).unwrap();
    let phi = entry.phi_poly();
    let x3 = random_multivector(rng, 3, 3, 2);
    let x2 = random_multivector(rng, 3, 2, 2);
    let beta = x3.d_phi(&phi).add(&x2.mul_poly(&phi));
    let problem = mv_problem(3, &phi, &[("X3", &x3), ("X2", &x2)]);
    let d = match decompose(&beta, &phi) {
        Ok(d) => d,
        Err(e) => {
            return Err(CaseFailure {
                note: format!("decompose failed over {}: {e}", entry.name),
                problem,
            })
        }
    };
    let reassembled = d.x3.d_phi(&phi).add(&d.x2.mul_poly(&phi));
    if reassembled != beta {
        return Err(CaseFailure {
            note: "reassembly differs from the input bracket".into(),
            problem,
        });
    }
    // d_phi(X3) is unique modulo phi: the difference must divide out.
    let diff = d.x3.d_phi(&phi).sub(&x3.d_phi(&phi));
    for (_, c) in diff.terms() {
        if c.exact_div(&phi).is_none() {
            return Err(CaseFailure {
                note: "d_phi(X3' - X3) is not phi-divisible".into(),
                problem,
            });
        }
    }
    Ok(())
}

fn case_extend_dim3(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let entries: Vec<_> = corpus::surface_entries().collect();
    let entry = entries[case % entries.len()];
    let phi = entry.phi_poly();
    let f = random_poly(rng, 3, 3, 4);
    let r = extend_dim3(&phi, &f).expect("corpus equations are isolated");
    if r.is_poisson && casimir_check(&r.beta, &phi) {
        Ok(())
    } else {
        Err(CaseFailure {
            note: format!("extension over {} with f = {} failed", entry.name, f),
            problem: json!({"n": 3, "phi": entry.phi, "f": f.to_string()}),
        })
    }
}

fn case_dim4_identity(rng: &mut ChaCha8Rng, _case: usize) -> Result<(), CaseFailure> {
    let phi = corpus::entry("quadric4").unwrap().phi_poly();
    let x3 = random_multivector(rng, 4, 3, 2);
    let problem = mv_problem(4, &phi, &[("X3", &x3)]);
    let dphix3 = x3.d_phi(&phi);
    let lhs = schouten(&x3, &dphix3);
    let rhs = x3.divergence().wedge(&dphix3).scale(&rat(-2));
    if lhs != rhs {
        return Err(CaseFailure {
            note: "[X3, d_phi X3] != -2 D(X3)^d_phi(X3)".into(),
            problem,
        });
    }
    let a = obstruction_dim4(&x3, &phi).map_err(|e| CaseFailure {
        note: format!("obstruction_dim4 error: {e}"),
        problem: problem.clone(),
    })?;
    let b = obstruction_general(&x3, &phi).map_err(|e| CaseFailure {
        note: format!("obstruction_general error: {e}"),
        problem: problem.clone(),
    })?;
    if a.satisfied != b.satisfied {
        return Err(CaseFailure {
            note: format!(
                "obstruction verdicts disagree: dim4 {} vs general {}",
                a.satisfied, b.satisfied
            ),
            problem,
        });
    }
    Ok(())
}

fn case_x2_freedom(rng: &mut ChaCha8Rng, case: usize) -> Result<(), CaseFailure> {
    let names = ["A1", "A2", "D4"];
    let entry = corpus::entry(names[case % names.len()]).unwrap();
    let phi = entry.phi_poly();
    let x3 = random_multivector(rng, 3, 3, 2);
    let x2 = random_multivector(rng, 3, 2, 2);
    let beta = x3.d_phi(&phi).add(&x2.mul_poly(&phi));
    let problem = mv_problem(3, &phi, &[("X3", &x3), ("X2", &x2)]);
    let d = decompose(&beta, &phi).map_err(|e| CaseFailure {
        note: format!("decompose failed: {e}"),
        problem: problem.clone(),
    })?;
    let alt = random_multivector(rng, 3, 2, 2);
    let tilted = freedom_in_x2(&d, &phi, &alt);
    if !check_hamiltonian(&tilted, &phi).is_ok() {
        return Err(CaseFailure {
            note: "reassembled bracket failed the hamiltonian check".into(),
            problem,
        });
    }
    for (_, c) in tilted.sub(&beta).terms() {
        if c.exact_div(&phi).is_none() {
            return Err(CaseFailure {
                note: "beta~ - beta is not phi-divisible".into(),
                problem,
            });
        }
    }
    Ok(())
}
