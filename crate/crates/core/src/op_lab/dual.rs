//! Cauchy dual `T' = T(T*T)⁻¹` and the left inverse `L = (T*T)⁻¹T*`, both
//! computed from the trusted columns of a truncation.

use super::{OpError, TruncOp};
use crate::linalg::{hermitian_eigenvalues, spd_solve, CMatrix};

/// Gram matrices with smallest eigenvalue below this are rejected.
pub const GRAM_FLOOR: f64 = 1e-10;

fn band_gram(t: &TruncOp) -> Result<(CMatrix, CMatrix, Vec<usize>), OpError> {
    let idx = t.band_indices();
    if idx.is_empty() {
        return Err(OpError::EmptyBand);
    }
    let m = t.band_block();
    let g = m.adjoint() * &m;
    let min_eig = hermitian_eigenvalues(&g).into_iter().fold(f64::INFINITY, f64::min);
    if min_eig < GRAM_FLOOR {
        return Err(OpError::NearlySingular { min_eig });
    }
    Ok((m, g, idx))
}

/// `T(T*T)⁻¹` on the trusted columns; the remaining columns are zero.
///
/// The result is exact on the band whenever `T*T - I` is supported inside
/// it, e.g. for polynomial rank-one perturbations of the shift.
pub fn cauchy_dual(t: &TruncOp) -> Result<TruncOp, OpError> {
    let (m, g, idx) = band_gram(t)?;
    let solved = spd_solve(&g, &m.adjoint()).ok_or(OpError::NearlySingular { min_eig: 0.0 })?;
    // M G⁻¹ = (G⁻¹ M*)*
    let dual_cols = solved.adjoint();
    let n = t.total_dim();
    let mut out = CMatrix::zeros(n, n);
    for (c, &k) in idx.iter().enumerate() {
        out.set_column(k, &dual_cols.column(c));
    }
    TruncOp::new(&format!("{}_dual", t.tag()), t.dim(), t.copies(), t.trust_band(), out)
}

/// `(T*T)⁻¹T*` placed in the trusted rows, so that `L·T` is the identity
/// on the band.
pub fn left_inverse(t: &TruncOp) -> Result<TruncOp, OpError> {
    let (m, g, idx) = band_gram(t)?;
    let rows = spd_solve(&g, &m.adjoint()).ok_or(OpError::NearlySingular { min_eig: 0.0 })?;
    let n = t.total_dim();
    let mut out = CMatrix::zeros(n, n);
    for (r, &k) in idx.iter().enumerate() {
        out.set_row(k, &rows.row(r));
    }
    TruncOp::new(&format!("{}_left_inverse", t.tag()), t.dim(), t.copies(), t.trust_band(), out)
}
