//! The on-disk algebra file format: a JSON document carrying a carrier
//! dimension, sparse structure-constant tables, the structure map pair,
//! and optional extras (a derivation matrix, basis names, provenance).
//!
//! Structure constants are sparse triple lists `[i, j, k, "p/q"]`; absent
//! entries are zero. Rationals must be in canonical form and matrices are
//! row-major arrays of rational strings. Unknown keys are rejected.
//! Serialization is deterministic: entries are emitted in lexicographic
//! order, so equal bundles produce byte-identical files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{BilinearOp, OneProductAlgebra, TwoProductAlgebra};
use crate::error::Error;
use crate::generators::DerivationData;
use crate::linalg::LinearMap;
use crate::rational::Rat;

pub const FORMAT_VERSION: &str = "1";

/// Checks are exhaustive over basis triples, so work grows with the sixth
/// power of the dimension; files beyond this ceiling are rejected up
/// front.
pub const MAX_DIM: usize = 64;

/// One sparse structure constant: `(i, j, k, coefficient)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Entry(pub usize, pub usize, pub usize, pub String);

/// Record of the construction that produced a file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub construction: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

/// The serialized form of an algebra bundle.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub mu: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<Entry>>,
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// The decoded contents of an [`AlgebraFile`].
#[derive(Clone, Debug)]
pub struct ParsedAlgebra {
    pub dim: usize,
    pub basis_names: Option<Vec<String>>,
    pub mu: BilinearOp,
    pub star: Option<BilinearOp>,
    pub bracket: Option<BilinearOp>,
    pub alpha: LinearMap,
    pub beta: LinearMap,
    pub derivation: Option<LinearMap>,
    pub provenance: Option<Provenance>,
}

fn parse_op(dim: usize, entries: &[Entry], what: &str) -> Result<BilinearOp, Error> {
    let mut triples = Vec::with_capacity(entries.len());
    for Entry(i, j, k, c) in entries {
        let coeff = Rat::parse_canonical(c)
            .map_err(|e| Error::Parse(format!("{what}[{i},{j},{k}]: {e}")))?;
        triples.push((*i, *j, *k, coeff));
    }
    BilinearOp::from_triples(dim, &triples).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn parse_matrix(dim: usize, rows: &[Vec<String>], what: &str) -> Result<LinearMap, Error> {
    if rows.len() != dim {
        return Err(Error::Parse(format!(
            "{what}: expected {dim} rows, found {}",
            rows.len()
        )));
    }
    let mut parsed = Vec::with_capacity(dim);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Parse(format!(
                "{what}: row {r} has {} entries, expected {dim}",
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(dim);
        for (c, s) in row.iter().enumerate() {
            out.push(
                Rat::parse_canonical(s)
                    .map_err(|e| Error::Parse(format!("{what}[{r}][{c}]: {e}")))?,
            );
        }
        parsed.push(out);
    }
    LinearMap::from_rows(parsed)
}

fn op_entries(op: &BilinearOp) -> Vec<Entry> {
    op.nonzero_triples()
        .into_iter()
        .map(|(i, j, k, c)| Entry(i, j, k, c.to_string()))
        .collect()
}

fn matrix_rows(m: &LinearMap) -> Vec<Vec<String>> {
    m.rows()
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.to_string()).collect())
        .collect()
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Deterministic pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("file format always serializes");
        s.push('\n');
        s
    }

    /// Decodes and validates the file contents: version, dimension
    /// ceiling, index ranges, canonical rationals, matrix shapes.
    pub fn decode(&self) -> Result<ParsedAlgebra, Error> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {:?} (this tool reads {FORMAT_VERSION:?})",
                self.format_version
            )));
        }
        if self.dim > MAX_DIM {
            return Err(Error::Parse(format!(
                "dim {} exceeds the supported ceiling of {MAX_DIM}",
                self.dim
            )));
        }
        if let Some(names) = &self.basis_names {
            if names.len() != self.dim {
                return Err(Error::Parse(format!(
                    "basis_names has {} entries, dim is {}",
                    names.len(),
                    self.dim
                )));
            }
        }
        Ok(ParsedAlgebra {
            dim: self.dim,
            basis_names: self.basis_names.clone(),
            mu: parse_op(self.dim, &self.mu, "mu")?,
            star: self.star.as_deref().map(|s| parse_op(self.dim, s, "star")).transpose()?,
            bracket: self
                .bracket
                .as_deref()
                .map(|b| parse_op(self.dim, b, "bracket"))
                .transpose()?,
            alpha: parse_matrix(self.dim, &self.alpha, "alpha")?,
            beta: parse_matrix(self.dim, &self.beta, "beta")?,
            derivation: self
                .derivation
                .as_deref()
                .map(|d| parse_matrix(self.dim, d, "derivation"))
                .transpose()?,
            provenance: self.provenance.clone(),
        })
    }

    pub fn from_one_product(a: &OneProductAlgebra, provenance: Option<Provenance>) -> Self {
        AlgebraFile {
            format_version: FORMAT_VERSION.to_string(),
            dim: a.dim(),
            basis_names: None,
            mu: op_entries(a.mu()),
            star: None,
            bracket: None,
            alpha: matrix_rows(a.alpha()),
            beta: matrix_rows(a.beta()),
            derivation: None,
            provenance,
        }
    }

    /// Serializes a two-product bundle, placing the second product in the
    /// `star` key.
    pub fn from_two_product(a: &TwoProductAlgebra, provenance: Option<Provenance>) -> Self {
        AlgebraFile {
            format_version: FORMAT_VERSION.to_string(),
            dim: a.dim(),
            basis_names: None,
            mu: op_entries(a.mu()),
            star: Some(op_entries(a.star())),
            bracket: None,
            alpha: matrix_rows(a.alpha()),
            beta: matrix_rows(a.beta()),
            derivation: None,
            provenance,
        }
    }

    /// Serializes a bundle whose second product is a bracket, placing it
    /// in the `bracket` key.
    pub fn from_bracket_bundle(a: &TwoProductAlgebra, provenance: Option<Provenance>) -> Self {
        AlgebraFile {
            format_version: FORMAT_VERSION.to_string(),
            dim: a.dim(),
            basis_names: None,
            mu: op_entries(a.mu()),
            star: None,
            bracket: Some(op_entries(a.star())),
            alpha: matrix_rows(a.alpha()),
            beta: matrix_rows(a.beta()),
            derivation: None,
            provenance,
        }
    }

    /// Serializes generator output: a commutative product with maps and a
    /// derivation, ready for the derivation construction.
    pub fn from_derivation_data(
        data: &DerivationData,
        basis_names: Option<Vec<String>>,
        provenance: Option<Provenance>,
    ) -> Self {
        AlgebraFile {
            format_version: FORMAT_VERSION.to_string(),
            dim: data.mu.dim(),
            basis_names,
            mu: op_entries(&data.mu),
            star: None,
            bracket: None,
            alpha: matrix_rows(&data.alpha),
            beta: matrix_rows(&data.beta),
            derivation: Some(matrix_rows(&data.derivation)),
            provenance,
        }
    }
}
