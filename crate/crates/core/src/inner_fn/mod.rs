//! Finite Blaschke products, Frostman shifts, model spaces `K_θ = H² ⊖ θH²`
//! and Clark measures.

mod blaschke;
mod clark;
mod frostman;
mod model;

pub use blaschke::{blaschke_eval, factor, BlaschkeProduct, Zero};
pub use clark::{clark_inner_from_measure, clark_measure_from_blaschke, Atom, AtomicMeasure, ClarkInner};
pub use frostman::{frostman_bound, frostman_shift};
pub use model::{model_basis, ModelBasis};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InnerError {
    #[error("zero {re}+{im}i lies outside the open unit disc")]
    ZeroOutsideDisc { re: f64, im: f64 },
    #[error("zero multiplicity must be at least one")]
    ZeroMultiplicity,
    #[error("phase constant must be unimodular, got modulus {0}")]
    PhaseNotUnimodular(f64),
    #[error("Frostman parameter must satisfy |a| < 1, got {0}")]
    FrostmanParameter(f64),
    #[error("Clark measure requires θ(0) = 0, got |θ(0)| = {0}")]
    NonzeroAtOrigin(f64),
    #[error("measure weights must be positive and sum to one (sum {sum})")]
    InvalidWeights { sum: f64 },
    #[error("measure atoms must be distinct points of the circle")]
    InvalidAtoms,
    #[error("measure has no atoms")]
    EmptyMeasure,
    #[error("root finding failed: {0}")]
    RootFinding(String),
}
