//! Truncated operators: shifts and compressed shifts, Clark unitaries,
//! finite-rank perturbations of the shift, the intertwining pair of the
//! `θβ` construction, Cauchy duals, and worked examples.

mod dual;
mod examples;
mod perturb;
mod shifts;
mod thm69;
mod trunc_op;

pub use dual::{cauchy_dual, left_inverse};
pub use dual::GRAM_FLOOR;
pub use examples::{example53_g, example53_modulus, example55_pair, Example53, Example55};
pub use perturb::{example_plus_clark, lemma36_psi, perturb_lemma32, perturb_lemma36};
pub use shifts::{
    clark_unitary, compressed_shift, inv_adjoint_compressed_shift, model_cyclic_vector, shift, unitary_spectral_measure,
};
pub use thm69::{thm69_T, thm69_X, thm69_Y, Thm69Params};
pub use trunc_op::{band_indices, TruncOp, TAIL_TOL};

use crate::inner_fn::{BlaschkeProduct, InnerError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OpError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("T*T is numerically singular on the trust band (min eigenvalue {min_eig:e})")]
    NearlySingular { min_eig: f64 },
    #[error("empty trust band")]
    EmptyBand,
    #[error("eigenvalue computation did not converge")]
    Eigen,
    #[error(transparent)]
    Inner(#[from] InnerError),
    #[error(transparent)]
    Hardy(#[from] crate::hardy_core::HardyError),
}

/// Series length at which Taylor tails of the model-space vectors of `b`
/// are negligible, used for exact Gram computations.
pub fn gram_len(factors: &[&BlaschkeProduct], at_least: usize) -> usize {
    factors
        .iter()
        .map(|b| b.support_len(1e-18) + 2 * b.degree() + 8)
        .max()
        .unwrap_or(8)
        .max(at_least)
}

