//! The embedded singularity corpus: the simple surface singularities
//! A1..A4, D4, D5, E6, E7, E8 and the four-variable quadric cone. All have
//! isolated singularities at the origin and quasi-homogeneous equations;
//! the stored weights and Milnor numbers are verified by the `corpus`
//! command and the test suite.

use crate::polyring::{parse, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub n: usize,
    pub phi: &'static str,
    pub weights: &'static [u64],
    pub expected_milnor: u64,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "A1",
        n: 3,
        phi: "x1^2 + x2^2 + x3^2",
        weights: &[1, 1, 1],
        expected_milnor: 1,
    },
    CorpusEntry {
        name: "A2",
        n: 3,
        phi: "x1^3 + x2^2 + x3^2",
        weights: &[2, 3, 3],
        expected_milnor: 2,
    },
    CorpusEntry {
        name: "A3",
        n: 3,
        phi: "x1^4 + x2^2 + x3^2",
        weights: &[1, 2, 2],
        expected_milnor: 3,
    },
    CorpusEntry {
        name: "A4",
        n: 3,
        phi: "x1^5 + x2^2 + x3^2",
        weights: &[2, 5, 5],
        expected_milnor: 4,
    },
    CorpusEntry {
        name: "D4",
        n: 3,
        phi: "x1*(x2^2 + x1^2) + x3^2",
        weights: &[2, 2, 3],
        expected_milnor: 4,
    },
    CorpusEntry {
        name: "D5",
        n: 3,
        phi: "x1*(x2^2 + x1^3) + x3^2",
        weights: &[2, 3, 4],
        expected_milnor: 5,
    },
    CorpusEntry {
        name: "E6",
        n: 3,
        phi: "x1^3 + x2^4 + x3^2",
        weights: &[4, 3, 6],
        expected_milnor: 6,
    },
    CorpusEntry {
        name: "E7",
        n: 3,
        phi: "x1^3 + x1*x2^3 + x3^2",
        weights: &[6, 4, 9],
        expected_milnor: 7,
    },
    CorpusEntry {
        name: "E8",
        n: 3,
        phi: "x1^3 + x2^5 + x3^2",
        weights: &[10, 6, 15],
        expected_milnor: 8,
    },
    CorpusEntry {
        name: "quadric4",
        n: 4,
        phi: "x1^2 + x2^2 + x3^2 + x4^2",
        weights: &[1, 1, 1, 1],
        expected_milnor: 1,
    },
];

impl CorpusEntry {
    pub fn phi_poly(&self) -> Poly {
        parse(self.phi, self.n).expect("corpus equations parse")
    }
}

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

/// The three-variable entries, in corpus order.
pub fn surface_entries() -> impl Iterator<Item = &'static CorpusEntry> {
    CORPUS.iter().filter(|e| e.n == 3)
}
