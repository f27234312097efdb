use num_complex::Complex64;

use super::grid::samples_from_wrapped;
use super::{GridFn, HardyError, TrigPoly};

/// Lower clamp applied to `log w` before harmonic conjugation.
pub const LOG_FLOOR: f64 = -40.0;

/// Outer function recovered from grid samples of its modulus.
#[derive(Debug, Clone)]
pub struct OuterFunction {
    /// Taylor coefficients `0..M` (the grid interpolant of the outer function).
    pub function: TrigPoly,
    /// Number of samples whose logarithm hit [`LOG_FLOOR`].
    pub clamped: usize,
    /// Samples of the outer function on the input grid.
    pub samples: GridFn,
}

/// Outer function `exp(u)` with `Re u = log w` on the grid, normalized so the
/// value at the origin is positive.
pub fn outer_from_modulus(w: &GridFn) -> Result<OuterFunction, HardyError> {
    let grid = w.grid();
    let m = grid.size();
    let mut clamped = 0;
    let mut logs = Vec::with_capacity(m);
    for (index, v) in w.values().iter().enumerate() {
        let value = v.re;
        if !(value > 0.0) || v.im != 0.0 {
            return Err(HardyError::NonPositiveModulus { index, value });
        }
        let l = value.ln();
        if l < LOG_FLOOR {
            clamped += 1;
        }
        logs.push(Complex64::new(l.max(LOG_FLOOR), 0.0));
    }
    let ell = GridFn::new(grid, logs)?.dft();
    // analytic completion: ℓ̂(0) + 2 Σ_{k>0} ℓ̂(k) z^k, Nyquist term kept whole
    let mut u = vec![Complex64::new(0.0, 0.0); m];
    u[0] = Complex64::new(ell[0].re, 0.0);
    for k in 1..m / 2 {
        u[k] = ell[k] * 2.0;
    }
    if m >= 2 {
        u[m / 2] = Complex64::new(ell[m / 2].re, 0.0);
    }
    let outer_samples: Vec<Complex64> = samples_from_wrapped(grid, &u).into_iter().map(|z| z.exp()).collect();
    let samples = GridFn::new(grid, outer_samples)?;
    let coeffs = samples.dft();
    Ok(OuterFunction { function: TrigPoly::analytic(coeffs), clamped, samples })
}
