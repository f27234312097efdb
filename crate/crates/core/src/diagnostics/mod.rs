//! Quantitative verdicts on truncated operators and the lattice experiments.

mod lattice;
mod operator;

pub use lattice::{
    lemma46_theta_experiment, lemma61_intersection_metrics, ColumnBound, Lemma46Config, Lemma46Report, Lemma61Report,
};
pub use operator::{
    defect_trace_profile, expansivity_defect, intertwining_residual, omega_profile, quasiaffinity_metrics,
    similarity_condition, thm69_A_matrix, trace_norm_defect, wandering_dim, QuasiaffinityMetrics, EXPANSIVE_TOL,
    INTERTWINING_TOL, RANK_TOL,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::{orthonormal_basis, CMatrix};
use crate::op_lab::OpError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagError {
    #[error("operators have incompatible shapes: {0}")]
    Shape(String),
    #[error("subspace is not invariant (residual {residual:e})")]
    NotInvariant { residual: f64 },
    #[error("trust band {band} is too small: {reason}")]
    InsufficientBand { band: usize, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Op(#[from] OpError),
}

impl From<crate::hardy_core::HardyError> for DiagError {
    fn from(e: crate::hardy_core::HardyError) -> Self {
        DiagError::Op(e.into())
    }
}

impl From<crate::inner_fn::InnerError> for DiagError {
    fn from(e: crate::inner_fn::InnerError) -> Self {
        DiagError::Op(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Pass iff `value ≤ threshold`.
    AtMost,
    /// Pass iff `value ≥ threshold`.
    AtLeast,
}

/// A named measurement compared against a threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub direction: Direction,
    pub pass: bool,
    /// Trust band the measurement was taken on.
    pub band: usize,
    pub dims: Vec<usize>,
    pub params: BTreeMap<String, serde_json::Value>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(name: &str, value: f64, threshold: f64, direction: Direction, band: usize, dims: Vec<usize>) -> Self {
        let pass = match direction {
            Direction::AtMost => value <= threshold,
            Direction::AtLeast => value >= threshold,
        };
        Self {
            name: name.to_string(),
            value,
            threshold,
            direction,
            pass,
            band,
            dims,
            params: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn at_most(name: &str, value: f64, threshold: f64, band: usize, dims: Vec<usize>) -> Self {
        Self::new(name, value, threshold, Direction::AtMost, band, dims)
    }

    pub fn at_least(name: &str, value: f64, threshold: f64, band: usize, dims: Vec<usize>) -> Self {
        Self::new(name, value, threshold, Direction::AtLeast, band, dims)
    }

    pub fn with_param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).unwrap_or(serde_json::Value::Null));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Orthonormal columns spanning a subspace of a truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    basis: CMatrix,
    tag: String,
}

impl SubspaceBasis {
    /// Orthonormalizes the columns of `spanning`, dropping directions below
    /// `1e-10` of the largest singular value.
    pub fn from_spanning(spanning: &CMatrix, tag: &str) -> Self {
        Self { basis: orthonormal_basis(spanning, 1e-10), tag: tag.to_string() }
    }

    /// Span of the coordinate vectors `indices` in a space of dimension `dim`.
    pub fn coordinates(dim: usize, indices: &[usize], tag: &str) -> Self {
        let mut m = CMatrix::zeros(dim, indices.len());
        for (c, &i) in indices.iter().enumerate() {
            m[(i, c)] = num_complex::Complex64::new(1.0, 0.0);
        }
        Self { basis: m, tag: tag.to_string() }
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// `‖Q*Q - I‖_max`.
    pub fn gram_defect(&self) -> f64 {
        let g = self.basis.adjoint() * &self.basis - crate::linalg::identity(self.dim());
        crate::linalg::max_abs(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_direction_decides_pass() {
        assert!(Verdict::at_most("r", 1e-12, 1e-9, 3, vec![4]).pass);
        assert!(!Verdict::at_least("d", -0.75, -1e-10, 3, vec![4]).pass);
        let v = Verdict::at_most("r", 0.5, 1.0, 1, vec![2]).with_param("n", 2).with_note("ok");
        let s = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn subspace_basis_is_orthonormal() {
        let m = CMatrix::from_fn(6, 3, |i, j| num_complex::Complex64::new(((i + 1) as f64).powi(j as i32), (i as f64 * 0.3 + j as f64).sin()));
        let s = SubspaceBasis::from_spanning(&m, "probe");
        assert_eq!(s.dim(), 3);
        assert!(s.gram_defect() < 1e-10);
    }
}
