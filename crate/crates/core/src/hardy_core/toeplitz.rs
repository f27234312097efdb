use num_complex::Complex64;

use super::{GridFn, HardyError, TrigPoly};
use crate::linalg::{spectral_norm, CMatrix};
use crate::op_lab::TruncOp;

/// Relative threshold below which grid Fourier coefficients count as absent
/// when measuring the analytic bandwidth of a sampled symbol.
const GRID_BAND_TOL: f64 = 1e-14;

/// A symbol on the circle, given either by finitely many coefficients or by
/// grid samples (treated as band-limited to `[-M/2, M/2)`).
#[derive(Debug, Clone)]
pub enum Symbol {
    Poly(TrigPoly),
    Grid { samples: GridFn, wrapped: Vec<Complex64> },
}

impl Symbol {
    pub fn from_grid(samples: GridFn) -> Self {
        let wrapped = samples.dft();
        Symbol::Grid { samples, wrapped }
    }

    /// Fourier coefficient `ψ̂(k)`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        match self {
            Symbol::Poly(p) => p.coeff(k),
            Symbol::Grid { wrapped, .. } => {
                let m = wrapped.len() as i64;
                if k >= -m / 2 && k < m / 2 {
                    wrapped[k.rem_euclid(m) as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// Largest index `k ≥ 0` carrying a nonzero coefficient.
    pub fn analytic_bandwidth(&self) -> usize {
        match self {
            Symbol::Poly(p) => p.degree().map(|d| d.max(0) as usize).unwrap_or(0),
            Symbol::Grid { wrapped, .. } => {
                let m = wrapped.len();
                let scale = wrapped.iter().map(|z| z.norm()).fold(0.0, f64::max);
                (0..m / 2)
                    .rev()
                    .find(|&k| wrapped[k].norm() > GRID_BAND_TOL * scale)
                    .unwrap_or(0)
            }
        }
    }

    fn check_span(&self, lo: i64, hi: i64) -> Result<(), HardyError> {
        if let Symbol::Grid { wrapped, .. } = self {
            let m = wrapped.len() as i64;
            if lo < -m / 2 || hi >= m / 2 {
                return Err(HardyError::BandExceedsGrid { lo, hi, grid: m as usize });
            }
        }
        Ok(())
    }
}

impl From<TrigPoly> for Symbol {
    fn from(p: TrigPoly) -> Self {
        Symbol::Poly(p)
    }
}

impl From<GridFn> for Symbol {
    fn from(g: GridFn) -> Self {
        Symbol::from_grid(g)
    }
}

/// `n×n` truncation `[ψ̂(j-k)]` of the Toeplitz operator with symbol `ψ`.
pub fn toeplitz_matrix(symbol: &Symbol, n: usize) -> Result<TruncOp, HardyError> {
    if n == 0 {
        return Err(HardyError::ZeroDimension);
    }
    let span = n as i64 - 1;
    symbol.check_span(-span, span)?;
    let m = CMatrix::from_fn(n, n, |j, k| symbol.coeff(j as i64 - k as i64));
    let band = n.saturating_sub(symbol.analytic_bandwidth());
    Ok(TruncOp::from_parts("toeplitz", n, 1, band, m))
}

/// Truncated Hankel matrix of `P₋(ψ·)`: row `j-1` holds the coefficient of
/// `χ̄^j`, so entry `(j-1, k)` is `ψ̂(-j-k)`.
pub fn hankel_matrix(symbol: &Symbol, n: usize) -> Result<CMatrix, HardyError> {
    if n == 0 {
        return Err(HardyError::ZeroDimension);
    }
    symbol.check_span(-(2 * n as i64 - 1), 0)?;
    Ok(CMatrix::from_fn(n, n, |r, k| symbol.coeff(-(r as i64 + 1) - k as i64)))
}

pub fn hankel_norm(symbol: &Symbol, n: usize) -> Result<f64, HardyError> {
    Ok(spectral_norm(&hankel_matrix(symbol, n)?))
}
