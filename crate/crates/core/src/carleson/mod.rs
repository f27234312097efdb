//! Stolz-angle geometry, Carleson box sums and the generation-by-generation
//! construction of a Carleson zero set accumulating nontangentially at every
//! point of a compact subset of the circle.

mod builder;
mod compact;
mod geometry;

pub use builder::{build_lambda, certification_radii, BuildOutput, DeltaSeq, GenerationAudit, ZeroPoint, ZeroSet};
pub use compact::{CantorSet, CompactOracle, FinitePointSet};
pub use geometry::{
    blaschke_sum, canonical_probes, carleson_box_sup, nontangential_accumulation, s_of_epsilon, stolz_membership,
    stolz_membership_polar, t_of_s_r, Arc, BoxProbe,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CarlesonError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no solution of the angle equation for s = {s}, r = {r}")]
    NoSolution { s: f64, r: f64 },
    #[error("generation {generation}: cover length {sum} is not below the budget {budget}")]
    CoverBudgetExceeded { generation: usize, sum: f64, budget: f64 },
    #[error("generation {generation}: cover arcs overlap")]
    ArcsOverlap { generation: usize },
    #[error("generation {generation}: the compact sets are not nested")]
    NotNested { generation: usize },
    #[error("generation {generation}: empty cover")]
    EmptyCover { generation: usize },
    #[error("cover would need {needed} arcs, above the limit {limit}")]
    CoverTooLarge { needed: f64, limit: usize },
}
