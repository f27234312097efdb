//! Numerical laboratory for expansive finite-rank perturbations of the shift
//! on the Hardy space, Clark measures of finite Blaschke products, and
//! Carleson-type zero sets accumulating nontangentially on a compact set.
//!
//! Operators on `H²` are represented by truncations to the first `n`
//! monomials together with a trust band of columns that agree with the
//! infinite operator.

pub mod carleson;
pub mod diagnostics;
pub mod hardy_core;
pub mod inner_fn;
pub mod linalg;
pub mod op_lab;
pub mod series;

pub use num_complex::Complex64;

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default truncation dimension.
pub const DEFAULT_DIM: usize = 256;
/// Default number of grid points on the circle.
pub const DEFAULT_GRID: usize = 1024;
/// Default entrywise tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
