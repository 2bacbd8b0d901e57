//! The JSON model file: a graded ring plus named actions, with every
//! rational written as a `"num/den"` string.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohomology::{CupEntry, ModelParts, VarietyModel};
use crate::correspondence::CorrespondenceAction;
use crate::linalg::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::models::ModelBundle;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupRecord {
    pub k: usize,
    pub l: usize,
    pub i: usize,
    pub j: usize,
    pub target_coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRecord {
    pub name: String,
    /// Degree to row-major matrix.
    pub matrices: BTreeMap<usize, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<String>,
    pub is_ring_map: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub schema_version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub dims: Vec<usize>,
    pub basis_labels: Vec<Vec<String>>,
    pub cup: Vec<CupRecord>,
    pub integrate: Vec<String>,
    pub ample: Vec<String>,
    pub algebraic: Vec<Vec<usize>>,
    pub actions: Vec<ActionRecord>,
}

/// Why a model file could not be turned into a bundle.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadError {
    /// Malformed JSON, wrong schema, or an unparsable field.
    Parse(String),
    /// Well-formed file describing an invalid model or action.
    Invalid(String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Parse(m) => write!(f, "parse error: {m}"),
            Self::Invalid(m) => write!(f, "invalid model: {m}"),
        }
    }
}

impl std::error::Error for LoadError {}

fn fmt_all(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_all(v: &[String], field: &str) -> Result<Vec<Rational>, LoadError> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| LoadError::Parse(format!("{field}[{i}]: {e}"))))
        .collect()
}

fn parse_matrix(rows: &[Vec<String>], dim: usize, field: &str) -> Result<RationalMatrix, LoadError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(LoadError::Invalid(format!("{field}: expected a {dim}x{dim} matrix")));
    }
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_all(r, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if dim == 0 {
        return Ok(RationalMatrix::zeros(0, 0));
    }
    RationalMatrix::from_rows(parsed).map_err(|e| LoadError::Invalid(format!("{field}: {e}")))
}

impl ModelFile {
    pub fn from_bundle(bundle: &ModelBundle) -> Self {
        let parts = bundle.model.to_parts();
        let actions = bundle
            .actions
            .iter()
            .map(|(name, a)| ActionRecord {
                name: name.clone(),
                matrices: a
                    .matrices()
                    .iter()
                    .enumerate()
                    .map(|(k, m)| (k, m.to_rows().iter().map(|r| fmt_all(r)).collect()))
                    .collect(),
                polarization: a.polarization().map(format_rational),
                is_ring_map: a.is_ring_map(),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            n: parts.n,
            q: parts.q,
            dims: parts.dims,
            basis_labels: parts.labels,
            cup: parts
                .cup
                .into_iter()
                .map(|e| CupRecord { k: e.k, l: e.l, i: e.i, j: e.j, target_coeffs: fmt_all(&e.target) })
                .collect(),
            integrate: fmt_all(&parts.integrate),
            ample: fmt_all(&parts.ample),
            algebraic: parts.algebraic,
            actions,
        }
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let file: Self = serde_json::from_str(text)
            .map_err(|e| LoadError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(LoadError::Parse(format!(
                "schema_version: unsupported version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        Ok(file)
    }

    /// Canonical text: pretty JSON in declaration order, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model files serialize");
        s.push('\n');
        s
    }

    /// The ring alone, shape-checked but not validated.
    pub fn to_model(&self) -> Result<VarietyModel, LoadError> {
        let cup = self
            .cup
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                Ok(CupEntry {
                    k: c.k,
                    l: c.l,
                    i: c.i,
                    j: c.j,
                    target: parse_all(&c.target_coeffs, &format!("cup[{idx}].target_coeffs"))?,
                })
            })
            .collect::<Result<Vec<_>, LoadError>>()?;
        VarietyModel::from_parts(ModelParts {
            n: self.n,
            dims: self.dims.clone(),
            labels: self.basis_labels.clone(),
            cup,
            integrate: parse_all(&self.integrate, "integrate")?,
            ample: parse_all(&self.ample, "ample")?,
            algebraic: self.algebraic.clone(),
            q: self.q,
        })
        .map_err(|e| LoadError::Invalid(e.to_string()))
    }

    /// Builds every action on an already validated model.
    pub fn to_actions(&self, model: &Arc<VarietyModel>) -> Result<Vec<(String, CorrespondenceAction)>, LoadError> {
        let mut out: Vec<(String, CorrespondenceAction)> = Vec::new();
        for (idx, rec) in self.actions.iter().enumerate() {
            let field = format!("actions[{idx}]");
            if out.iter().any(|(n, _)| *n == rec.name) {
                return Err(LoadError::Invalid(format!("{field}: duplicate action name {:?}", rec.name)));
            }
            let expected: Vec<usize> = (0..=model.top()).collect();
            if rec.matrices.keys().copied().collect::<Vec<_>>() != expected {
                return Err(LoadError::Invalid(format!("{field}.matrices: expected keys 0..={}", model.top())));
            }
            let matrices = rec
                .matrices
                .iter()
                .map(|(&k, rows)| parse_matrix(rows, model.dim(k), &format!("{field}.matrices.{k}")))
                .collect::<Result<Vec<_>, _>>()?;
            let polarization = rec
                .polarization
                .as_deref()
                .map(|p| parse_rational(p).map_err(|e| LoadError::Parse(format!("{field}.polarization: {e}"))))
                .transpose()?;
            let action = CorrespondenceAction::new(model.clone(), matrices, rec.is_ring_map, polarization)
                .map_err(|e| LoadError::Invalid(format!("{field} ({}): {e}", rec.name)))?;
            out.push((rec.name.clone(), action));
        }
        Ok(out)
    }

    /// Full load: parse-level errors first, then model validation, then actions.
    pub fn to_bundle(&self) -> Result<ModelBundle, LoadError> {
        let model = Arc::new(self.to_model()?);
        let report = crate::cohomology::validate_model(&model);
        if !report.valid {
            let first = &report.failures[0];
            return Err(LoadError::Invalid(format!("{}: {}", first.check, first.witness)));
        }
        let actions = self.to_actions(&model)?;
        Ok(ModelBundle { model, actions })
    }
}

/// True when `s` is already in canonical `"num/den"` form.
pub fn is_canonical_rational(s: &str) -> bool {
    parse_rational(s).is_ok_and(|r| format_rational(&r) == s)
}
