//! JSON file formats.
//!
//! Algebra specs:
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "norm": { "kind": "weighted_sup", "weights": ["1", "1"] },
//!   "product": { "entries": [[1, 1, 2, "1"]] }
//! }
//! ```
//!
//! Product entries are sparse `[i, j, k, c]` with `e_i e_j = sum_k c e_k`,
//! 1-based indices, and rationals as canonical `"p/q"` strings (`q > 0`, lowest
//! terms, `"/q"` omitted for integers). Constraint systems:
//!
//! ```json
//! { "ambient": 3, "constraints": [[1, 2, "1"], [3, 1, "0"]] }
//! ```
//!
//! [`emit_spec`] is canonical: entries sorted by `(i, j, k)`, zero entries
//! dropped, fixed layout. Parsing and re-emitting a canonical file reproduces it
//! byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, StructureTensor};
use crate::error::{Error, Result};
use crate::lattice::{NormKind, NormSpec};
use crate::representation::{Constraint, ConstraintSystem};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub dimension: usize,
    pub norm: NormFile,
    pub product: ProductFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormFile {
    pub kind: NormKind,
    pub weights: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductFile {
    pub entries: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintFile {
    pub ambient: usize,
    pub constraints: Vec<(usize, usize, String)>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn syntax(e: serde_json::Error) -> Error {
    invalid(format!("line {}, column {}: {e}", e.line(), e.column()))
}

fn rational(s: &str, at: &str) -> Result<Scalar> {
    scalar::parse_canonical(s).ok_or_else(|| {
        let hint = scalar::parse_lenient(s).map(|v| format!(" (canonical form is \"{}\")", scalar::format(&v)));
        invalid(format!("{at}: \"{s}\" is not a canonical rational{}", hint.unwrap_or_default()))
    })
}

fn index(i: usize, dim: usize, at: &str) -> Result<usize> {
    if (1..=dim).contains(&i) {
        Ok(i - 1)
    } else {
        Err(invalid(format!("{at}: index {i} is outside 1..={dim}")))
    }
}

impl SpecFile {
    pub fn into_spec(self) -> Result<AlgebraSpec> {
        let dim = self.dimension;
        if dim == 0 {
            return Err(invalid("dimension: must be positive"));
        }
        if self.norm.weights.len() != dim {
            return Err(invalid(format!(
                "norm.weights: expected {dim} weights, found {}",
                self.norm.weights.len()
            )));
        }
        let weights = self
            .norm
            .weights
            .iter()
            .enumerate()
            .map(|(n, w)| rational(w, &format!("norm.weights[{n}]")))
            .collect::<Result<Vec<_>>>()?;
        let norm = NormSpec::new(self.norm.kind, weights).map_err(|e| invalid(format!("norm.weights: {e}")))?;
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(self.product.entries.len());
        for (n, (i, j, k, c)) in self.product.entries.iter().enumerate() {
            let at = format!("product.entries[{n}]");
            let key = (index(*i, dim, &at)?, index(*j, dim, &at)?, index(*k, dim, &at)?);
            if !seen.insert(key) {
                return Err(invalid(format!("{at}: duplicate entry for [{i}, {j}, {k}]")));
            }
            entries.push((key.0, key.1, key.2, rational(c, &at)?));
        }
        AlgebraSpec::new(norm, StructureTensor::from_entries(dim, entries))
    }

    pub fn from_spec(a: &AlgebraSpec) -> Self {
        Self {
            dimension: a.dim(),
            norm: NormFile { kind: a.norm().kind(), weights: a.norm().weights().iter().map(scalar::format).collect() },
            product: ProductFile {
                entries: a
                    .tensor()
                    .nonzero_entries()
                    .map(|(i, j, k, v)| (i + 1, j + 1, k + 1, scalar::format(v)))
                    .collect(),
            },
        }
    }
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    serde_json::from_str::<SpecFile>(text).map_err(syntax)?.into_spec()
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Canonical text of a spec file, ending in a newline.
pub fn emit_spec(a: &AlgebraSpec) -> String {
    let file = SpecFile::from_spec(a);
    let mut out = String::new();
    let weights: Vec<String> = file.norm.weights.iter().map(|w| quoted(w)).collect();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"dimension\": {},", file.dimension).unwrap();
    writeln!(out, "  \"norm\": {{").unwrap();
    writeln!(out, "    \"kind\": {},", quoted(file.norm.kind.name())).unwrap();
    writeln!(out, "    \"weights\": [{}]", weights.join(", ")).unwrap();
    writeln!(out, "  }},").unwrap();
    writeln!(out, "  \"product\": {{").unwrap();
    if file.product.entries.is_empty() {
        writeln!(out, "    \"entries\": []").unwrap();
    } else {
        writeln!(out, "    \"entries\": [").unwrap();
        let n = file.product.entries.len();
        for (idx, (i, j, k, c)) in file.product.entries.iter().enumerate() {
            let sep = if idx + 1 < n { "," } else { "" };
            writeln!(out, "      [{i}, {j}, {k}, {}]{sep}", quoted(c)).unwrap();
        }
        writeln!(out, "    ]").unwrap();
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "}}").unwrap();
    out
}

impl ConstraintFile {
    pub fn into_system(self) -> Result<ConstraintSystem> {
        let m = self.ambient;
        if m == 0 {
            return Err(invalid("ambient: must be positive"));
        }
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for (n, (t, s, lambda)) in self.constraints.iter().enumerate() {
            let at = format!("constraints[{n}]");
            let lambda = rational(lambda, &at)?;
            if lambda.is_negative_rational() {
                return Err(invalid(format!("{at}: lambda must be nonnegative")));
            }
            constraints.push(Constraint { t: index(*t, m, &at)?, s: index(*s, m, &at)?, lambda });
        }
        ConstraintSystem::new(m, constraints)
    }

    pub fn from_system(cs: &ConstraintSystem) -> Self {
        Self {
            ambient: cs.ambient(),
            constraints: cs
                .constraints()
                .iter()
                .map(|c| (c.t + 1, c.s + 1, scalar::format(&c.lambda)))
                .collect(),
        }
    }
}

trait NegativeRational {
    fn is_negative_rational(&self) -> bool;
}

impl NegativeRational for Scalar {
    fn is_negative_rational(&self) -> bool {
        *self < Scalar::zero()
    }
}

pub fn parse_constraints(text: &str) -> Result<ConstraintSystem> {
    serde_json::from_str::<ConstraintFile>(text).map_err(syntax)?.into_system()
}

/// Canonical text of a constraint file, ending in a newline.
pub fn emit_constraints(cs: &ConstraintSystem) -> String {
    let file = ConstraintFile::from_system(cs);
    let items: Vec<String> =
        file.constraints.iter().map(|(t, s, l)| format!("[{t}, {s}, {}]", quoted(l))).collect();
    format!("{{\n  \"ambient\": {},\n  \"constraints\": [{}]\n}}\n", file.ambient, items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    const TWISTED: &str = r#"{
  "dimension": 2,
  "norm": {
    "kind": "weighted_sup",
    "weights": ["1", "1"]
  },
  "product": {
    "entries": [
      [1, 1, 2, "1"]
    ]
  }
}
"#;

    #[test]
    fn parse_and_emit() {
        let a = parse_spec(TWISTED).unwrap();
        assert_eq!(a.tensor().get(0, 0, 1), &int(1));
        assert_eq!(emit_spec(&a), TWISTED);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_weight = TWISTED.replace(r#"["1", "1"]"#, r#"["1", "0"]"#);
        assert!(parse_spec(&bad_weight).is_err());
        let non_canonical = TWISTED.replace(r#"["1", "1"]"#, r#"["2/2", "1"]"#);
        let err = parse_spec(&non_canonical).unwrap_err().to_string();
        assert!(err.contains("norm.weights[0]") && err.contains("canonical form is \"1\""), "{err}");
        let out_of_range = TWISTED.replace("[1, 1, 2, \"1\"]", "[1, 1, 3, \"1\"]");
        assert!(parse_spec(&out_of_range).unwrap_err().to_string().contains("outside 1..=2"));
        let dup = TWISTED.replace("[1, 1, 2, \"1\"]", "[1, 1, 2, \"1\"], [1, 1, 2, \"2\"]");
        assert!(parse_spec(&dup).unwrap_err().to_string().contains("duplicate"));
        let err = parse_spec("{\n  \"dimension\": 2,\n  oops\n}").unwrap_err().to_string();
        assert!(err.starts_with("invalid input: line 3"), "{err}");
        let kind = TWISTED.replace("weighted_sup", "weighted_l2");
        assert!(parse_spec(&kind).is_err());
    }

    #[test]
    fn constraints_round_trip() {
        let text = "{\n  \"ambient\": 3,\n  \"constraints\": [[1, 2, \"1\"], [3, 1, \"1/2\"]]\n}\n";
        let cs = parse_constraints(text).unwrap();
        assert_eq!(cs.constraints()[1].lambda, ratio(1, 2));
        assert_eq!(emit_constraints(&cs), text);
        assert!(parse_constraints(r#"{"ambient": 2, "constraints": [[1, 2, "-1"]]}"#).is_err());
        assert!(parse_constraints(r#"{"ambient": 2, "constraints": [[0, 2, "1"]]}"#).is_err());
    }
}
