//! Trigonometric polynomials, circle grids, Riesz projections, Toeplitz and
//! Hankel truncations, and outer functions from boundary modulus.

mod grid;
mod outer;
mod toeplitz;
mod trig_poly;

pub use grid::{coeffs_from_samples, GridFn, UnitGrid};
pub use outer::{outer_from_modulus, OuterFunction, LOG_FLOOR};
pub use toeplitz::{hankel_matrix, hankel_norm, toeplitz_matrix, Symbol};
pub use trig_poly::{riesz_minus, riesz_plus, TrigPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HardyError {
    #[error("grid size {0} is not a power of two")]
    GridNotPowerOfTwo(usize),
    #[error("coefficient band [{lo}, {hi}] does not fit a grid of {grid} points")]
    BandExceedsGrid { lo: i64, hi: i64, grid: usize },
    #[error("empty coefficient band [{lo}, {hi}]")]
    EmptyBand { lo: i64, hi: i64 },
    #[error("modulus sample {index} is not positive ({value})")]
    NonPositiveModulus { index: usize, value: f64 },
    #[error("{values} samples supplied for a grid of {grid} points")]
    SampleCount { values: usize, grid: usize },
    #[error("truncation dimension must be positive")]
    ZeroDimension,
}
