//! Problem files and reports: the structured-text interface of the binary.
//!
//! A problem file is a JSON document with polynomial text embedded as
//! strings and multivector literals as lists of `{"index": [...],
//! "coeff": "..."}` entries. Indices are 1-based on this boundary and
//! converted to the library's 0-based convention on load. Reports mirror
//! the inputs and carry verdicts and witnesses; witnesses use the same
//! literal encoding so a report can be reloaded and re-checked.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::BracketData;
use crate::exterior::{MultiIndex, Multivector};
use crate::polyring::{parse, Poly};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("field {field}: parse error at position {pos}: {msg}")]
    PolyText {
        field: String,
        pos: usize,
        msg: String,
    },
    #[error("{0}")]
    Invalid(String),
}

/// One term of a multivector literal: 1-based variable indices and a
/// polynomial coefficient in text form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MvTerm {
    pub index: Vec<usize>,
    pub coeff: String,
}

/// Input document for the file-driven commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    pub phi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(rename = "X3", default, skip_serializing_if = "Option::is_none")]
    pub x3: Option<Vec<MvTerm>>,
    #[serde(rename = "X2", default, skip_serializing_if = "Option::is_none")]
    pub x2: Option<Vec<MvTerm>>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
        if file.n == 0 {
            return Err(SchemaError::Invalid("n must be positive".into()));
        }
        Ok(file)
    }

    pub fn parse_phi(&self) -> Result<Poly, SchemaError> {
        parse_field("phi", &self.phi, self.n)
    }

    pub fn parse_f(&self) -> Result<Option<Poly>, SchemaError> {
        self.f
            .as_deref()
            .map(|t| parse_field("f", t, self.n))
            .transpose()
    }

    /// Assemble the bracket representatives. Keys are `"i,j"` with 1-based
    /// indices; a key with `i > j` contributes the skew representative
    /// `x_ji = -x_ij`. Duplicated skew pairs are rejected.
    pub fn parse_bracket(&self) -> Result<Option<BracketData>, SchemaError> {
        let Some(map) = &self.bracket else {
            return Ok(None);
        };
        let phi = self.parse_phi()?;
        let mut reps: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        for (key, text) in map {
            let (i, j) = parse_pair_key(key, self.n)?;
            let field = format!("bracket[{key}]");
            let mut rep = parse_field(&field, text, self.n)?;
            let (a, b) = if i < j {
                (i, j)
            } else {
                rep = rep.negate();
                (j, i)
            };
            if reps.insert((a, b), rep).is_some() {
                return Err(SchemaError::Invalid(format!(
                    "bracket pair ({},{}) given twice (skew duplicates count)",
                    a + 1,
                    b + 1
                )));
            }
        }
        BracketData::new(phi, reps)
            .map(Some)
            .map_err(|e| SchemaError::Invalid(e.to_string()))
    }

    pub fn parse_x3(&self) -> Result<Option<Multivector>, SchemaError> {
        self.x3
            .as_deref()
            .map(|t| literal_to_mv(t, self.n, Some(3)))
            .transpose()
    }

    pub fn parse_x2(&self) -> Result<Option<Multivector>, SchemaError> {
        self.x2
            .as_deref()
            .map(|t| literal_to_mv(t, self.n, Some(2)))
            .transpose()
    }
}

fn parse_field(field: &str, text: &str, n: usize) -> Result<Poly, SchemaError> {
    parse(text, n).map_err(|e| SchemaError::PolyText {
        field: field.to_string(),
        pos: e.pos,
        msg: e.msg,
    })
}

fn parse_pair_key(key: &str, n: usize) -> Result<(usize, usize), SchemaError> {
    let bad = || SchemaError::Invalid(format!("bracket key '{key}' is not of the form \"i,j\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(SchemaError::Invalid(format!(
            "bracket key '{key}' out of range for n={n}"
        )));
    }
    Ok((i - 1, j - 1))
}

/// Decode a multivector literal (1-based indices, any order within a term).
pub fn literal_to_mv(
    terms: &[MvTerm],
    n: usize,
    expected_degree: Option<usize>,
) -> Result<Multivector, SchemaError> {
    let degree = match (terms.first(), expected_degree) {
        (Some(t), _) => t.index.len(),
        (None, Some(d)) => d,
        (None, None) => 0,
    };
    if let Some(d) = expected_degree {
        if degree != d {
            return Err(SchemaError::Invalid(format!(
                "multivector literal has degree {degree}, expected {d}"
            )));
        }
    }
    let mut mv = Multivector::zero(n, degree);
    for term in terms {
        if term.index.len() != degree {
            return Err(SchemaError::Invalid(
                "multivector literal mixes degrees".into(),
            ));
        }
        for &i in &term.index {
            if i == 0 || i > n {
                return Err(SchemaError::Invalid(format!(
                    "multivector index {i} out of range 1..={n}"
                )));
            }
        }
        let zero_based: Vec<usize> = term.index.iter().map(|&i| i - 1).collect();
        let Some((sorted, neg)) = MultiIndex::from_unsorted(&zero_based) else {
            return Err(SchemaError::Invalid(format!(
                "multivector index {:?} repeats an entry",
                term.index
            )));
        };
        let coeff = parse_field("coeff", &term.coeff, n)?;
        let idx: Vec<usize> = sorted.iter().collect();
        let signed = if neg { coeff.negate() } else { coeff };
        mv = mv.add(&Multivector::term(n, &idx, signed));
    }
    Ok(mv)
}

/// Encode a multivector as a literal (canonical order, 1-based indices).
pub fn mv_to_literal(mv: &Multivector) -> Vec<MvTerm> {
    mv.terms()
        .map(|(j, c)| MvTerm {
            index: j.iter().map(|i| i + 1).collect(),
            coeff: c.to_string(),
        })
        .collect()
}

/// Machine-readable command report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: serde_json::Value,
    pub verdicts: BTreeMap<String, serde_json::Value>,
    pub witnesses: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            verdicts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            seed: None,
            elapsed_ms: 0,
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        self.verdicts
            .insert(key.to_string(), serde_json::to_value(value).unwrap());
    }

    pub fn witness(&mut self, key: &str, value: impl Serialize) {
        self.witnesses
            .insert(key.to_string(), serde_json::to_value(value).unwrap());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Compact human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.verdicts {
            out.push_str(&format!("verdict {k}: {v}\n"));
        }
        for (k, v) in &self.witnesses {
            let rendered = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("witness {k}: {rendered}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        out.push_str(&format!("elapsed_ms: {}\n", self.elapsed_ms));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_problem() {
        let file = ProblemFile::from_json(
            r#"{"n": 3, "phi": "x1^2 + x2^2 + x3^2"}"#,
        )
        .unwrap();
        assert_eq!(file.n, 3);
        assert!(file.parse_phi().is_ok());
        assert!(file.parse_bracket().unwrap().is_none());
    }

    #[test]
    fn bracket_keys_with_skew_orientation() {
        let file = ProblemFile::from_json(
            r#"{"n": 3, "phi": "x1^2 + x2^2 + x3^2",
                "bracket": {"1,2": "2*x3", "2,3": "2*x1", "3,1": "2*x2"}}"#,
        )
        .unwrap();
        let data = file.parse_bracket().unwrap().unwrap();
        assert_eq!(data.reps()[&(0, 1)], parse("2*x3", 3).unwrap());
        assert_eq!(data.reps()[&(0, 2)], parse("-2*x2", 3).unwrap());
        assert_eq!(data.reps()[&(1, 2)], parse("2*x1", 3).unwrap());
    }

    #[test]
    fn duplicate_skew_pair_rejected() {
        let file = ProblemFile::from_json(
            r#"{"n": 3, "phi": "x1", "bracket": {"1,2": "x3", "2,1": "x3"}}"#,
        )
        .unwrap();
        assert!(file.parse_bracket().is_err());
    }

    #[test]
    fn poly_errors_carry_position() {
        let file =
            ProblemFile::from_json(r#"{"n": 3, "phi": "x1 + x9"}"#).unwrap();
        match file.parse_phi() {
            Err(SchemaError::PolyText { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn literal_roundtrip_with_unsorted_indices() {
        let terms = vec![
            MvTerm {
                index: vec![2, 1, 3],
                coeff: "x1".into(),
            },
            MvTerm {
                index: vec![1, 2, 4],
                coeff: "5".into(),
            },
        ];
        let mv = literal_to_mv(&terms, 4, Some(3)).unwrap();
        // (2,1,3) sorts to (1,2,3) with one inversion: coefficient -x1.
        assert_eq!(
            mv.coeff(&MultiIndex::new(&[0, 1, 2])),
            parse("-x1", 4).unwrap()
        );
        let encoded = mv_to_literal(&mv);
        let back = literal_to_mv(&encoded, 4, Some(3)).unwrap();
        assert_eq!(back, mv);
    }

    #[test]
    fn literal_validation() {
        let dup = vec![MvTerm {
            index: vec![1, 1],
            coeff: "1".into(),
        }];
        assert!(literal_to_mv(&dup, 3, None).is_err());
        let out_of_range = vec![MvTerm {
            index: vec![1, 5],
            coeff: "1".into(),
        }];
        assert!(literal_to_mv(&out_of_range, 3, None).is_err());
        let wrong_degree = vec![MvTerm {
            index: vec![1, 2],
            coeff: "1".into(),
        }];
        assert!(literal_to_mv(&wrong_degree, 3, Some(3)).is_err());
        // Empty literal with expected degree gives the zero multivector.
        let zero = literal_to_mv(&[], 3, Some(2)).unwrap();
        assert!(zero.is_zero());
    }
}
