use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::{HardyError, TrigPoly};

/// `M` equispaced points `e^{2πik/M}` on the circle, `M` a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGrid {
    size: usize,
}

impl UnitGrid {
    pub fn new(size: usize) -> Result<Self, HardyError> {
        if size == 0 || !size.is_power_of_two() {
            return Err(HardyError::GridNotPowerOfTwo(size));
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / self.size as f64
    }

    pub fn point(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.angle(k))
    }

    pub fn points(&self) -> Vec<Complex64> {
        (0..self.size).map(|k| self.point(k)).collect()
    }
}

/// Samples of a function on a [`UnitGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFn {
    grid: UnitGrid,
    values: Vec<Complex64>,
}

impl GridFn {
    pub fn new(grid: UnitGrid, values: Vec<Complex64>) -> Result<Self, HardyError> {
        if values.len() != grid.size() {
            return Err(HardyError::SampleCount { values: values.len(), grid: grid.size() });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: UnitGrid, f: impl Fn(Complex64) -> Complex64) -> Self {
        let values = grid.points().into_iter().map(f).collect();
        Self { grid, values }
    }

    pub fn from_poly(grid: UnitGrid, p: &TrigPoly) -> Self {
        Self::from_fn(grid, |z| p.eval(z))
    }

    pub fn grid(&self) -> UnitGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Discrete `L²(m)` norm (grid mean of `|f|²`).
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    /// All `M` discrete Fourier coefficients, index `k` stored at `k mod M`.
    pub(crate) fn dft(&self) -> Vec<Complex64> {
        let m = self.values.len();
        let mut buf = self.values.clone();
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        let inv = 1.0 / m as f64;
        buf.iter_mut().for_each(|z| *z *= inv);
        buf
    }
}

/// Discrete Fourier coefficients `ĉ(k) = (1/M) Σ f(ζ_j) ζ_j^{-k}` for
/// `lo ≤ k ≤ hi`.
pub fn coeffs_from_samples(f: &GridFn, lo: i64, hi: i64) -> Result<TrigPoly, HardyError> {
    if hi < lo {
        return Err(HardyError::EmptyBand { lo, hi });
    }
    let m = f.grid().size();
    if (hi - lo + 1) as usize > m {
        return Err(HardyError::BandExceedsGrid { lo, hi, grid: m });
    }
    let all = f.dft();
    let coeffs = (lo..=hi)
        .map(|k| all[k.rem_euclid(m as i64) as usize])
        .collect();
    Ok(TrigPoly::new(lo, coeffs))
}

/// Inverse of [`GridFn::dft`]: samples of `Σ c_k χ^k` from the `M` wrapped
/// coefficients.
pub(crate) fn samples_from_wrapped(grid: UnitGrid, wrapped: &[Complex64]) -> Vec<Complex64> {
    let mut buf = wrapped.to_vec();
    FftPlanner::new().plan_fft_inverse(grid.size()).process(&mut buf);
    buf
}
