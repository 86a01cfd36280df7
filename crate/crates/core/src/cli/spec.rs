//! JSON relation spec files and matrix encoding.
//!
//! Complex entries are `[re, im]` pairs and matrices are arrays of rows:
//!
//! ```json
//! {"mode": "operator", "n1": 1, "n2": 1, "matrices": {"op": [[[1.0, 0.0]]]}}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::linalg::{C64, CMat};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::ToleranceConfig;

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecMode {
    /// `matrices.op` is an `n2 x n1` matrix.
    Operator,
    /// `matrices.c` (`n1 x p`) and `matrices.d` (`n2 x p`) give `{(Cx, Dx)}`.
    KernelPair,
    /// `matrices.basis` is an `(n1+n2) x p` spanning set of the graph.
    GraphBasis,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecMatrices {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<JsonMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpecFile {
    pub mode: SpecMode,
    pub n1: usize,
    pub n2: usize,
    pub matrices: SpecMatrices,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// For `graph_basis`: the basis is claimed orthonormal and used as is.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub orthonormal: bool,
}

pub fn matrix_to_json(m: &CMat) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Decode a matrix with a known number of rows; every row must have the
/// same length and all entries must be finite.
pub fn matrix_from_json(m: &JsonMatrix, rows: usize, name: &str) -> Result<CMat, CliError> {
    if m.len() != rows {
        return Err(CliError::Input(format!("matrix `{name}` has {} rows, expected {rows}", m.len())));
    }
    let cols = m.first().map_or(0, |r| r.len());
    if let Some((i, r)) = m.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(CliError::Input(format!(
            "matrix `{name}`: row {i} has {} entries, row 0 has {cols}",
            r.len()
        )));
    }
    if m.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::Input(format!("matrix `{name}` has a non-finite entry")));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| C64::new(m[i][j][0], m[i][j][1])))
}

impl RelationSpecFile {
    pub fn from_json_str(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("spec schema error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Graph-basis spec of a relation, re-ingestible as the same subspace.
    pub fn from_relation(r: &LinearRelation, label: Option<String>) -> Self {
        Self {
            mode: SpecMode::GraphBasis,
            n1: r.n1(),
            n2: r.n2(),
            matrices: SpecMatrices {
                basis: Some(matrix_to_json(r.graph().basis())),
                ..SpecMatrices::default()
            },
            label,
            orthonormal: true,
        }
    }

    fn require<'a>(&self, m: &'a Option<JsonMatrix>, name: &str) -> Result<&'a JsonMatrix, CliError> {
        m.as_ref().ok_or_else(|| CliError::Input(format!("mode {:?} requires matrices.{name}", self.mode)))
    }

    fn reject_extra(&self, allowed: &[&str]) -> Result<(), CliError> {
        let present = [
            ("op", self.matrices.op.is_some()),
            ("c", self.matrices.c.is_some()),
            ("d", self.matrices.d.is_some()),
            ("basis", self.matrices.basis.is_some()),
        ];
        match present.iter().find(|(name, set)| *set && !allowed.contains(name)) {
            Some((name, _)) => Err(CliError::Input(format!(
                "matrices.{name} is not used in mode {:?}",
                self.mode
            ))),
            None => Ok(()),
        }
    }

    /// Raw graph spanning set `[F; G]` as given in the file.
    pub fn raw_basis(&self) -> Result<CMat, CliError> {
        let (n1, n2) = (self.n1, self.n2);
        if n1 == 0 || n2 == 0 {
            return Err(CliError::Input("n1 and n2 must be positive".into()));
        }
        match self.mode {
            SpecMode::Operator => {
                self.reject_extra(&["op"])?;
                let op = matrix_from_json(self.require(&self.matrices.op, "op")?, n2, "op")?;
                if op.ncols() != n1 {
                    return Err(CliError::Input(format!("op has {} columns, expected n1 = {n1}", op.ncols())));
                }
                Ok(crate::linalg::vstack(&[&CMat::identity(n1, n1), &op]))
            }
            SpecMode::KernelPair => {
                self.reject_extra(&["c", "d"])?;
                let c = matrix_from_json(self.require(&self.matrices.c, "c")?, n1, "c")?;
                let d = matrix_from_json(self.require(&self.matrices.d, "d")?, n2, "d")?;
                if c.ncols() != d.ncols() {
                    return Err(CliError::Input(format!(
                        "c has {} columns but d has {}",
                        c.ncols(),
                        d.ncols()
                    )));
                }
                Ok(crate::linalg::vstack(&[&c, &d]))
            }
            SpecMode::GraphBasis => {
                self.reject_extra(&["basis"])?;
                matrix_from_json(self.require(&self.matrices.basis, "basis")?, n1 + n2, "basis")
            }
        }
    }

    /// The relation described by the file.
    pub fn relation(&self, cfg: &ToleranceConfig) -> Result<LinearRelation, CliError> {
        let raw = self.raw_basis()?;
        if self.orthonormal {
            if self.mode != SpecMode::GraphBasis {
                return Err(CliError::Input("`orthonormal` applies to mode graph_basis only".into()));
            }
            let sub = Subspace::from_orthonormal(raw).map_err(|e| CliError::Input(e.to_string()))?;
            return LinearRelation::from_graph(sub, self.n1, self.n2).map_err(CliError::from);
        }
        match self.mode {
            SpecMode::Operator => Ok(LinearRelation::from_operator(&raw.rows(self.n1, self.n2).into_owned())),
            _ => LinearRelation::from_graph_basis(&raw, self.n1, self.n2, cfg).map_err(CliError::from),
        }
    }
}
