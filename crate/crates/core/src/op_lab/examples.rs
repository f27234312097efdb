//! Worked examples: an outer function with a singular modulus at `1`, and a
//! similarity-conjugated pair of left-invertible operators sharing a
//! cokernel.

use num_complex::Complex64;

use super::{shift, OpError, TruncOp};
use crate::hardy_core::{outer_from_modulus, GridFn, TrigPoly, UnitGrid};
use crate::linalg::{hermitian_eigen, identity, CMatrix, CVector};

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Unit-norm outer function with modulus proportional to
/// `1/(|t|^{1/2} log(2/|t|))` at `e^{iπt}`, `t ∈ (-1, 1]`.
#[derive(Debug, Clone)]
pub struct Example53 {
    pub g: TrigPoly,
    /// Target modulus on the grid, scaled by the same normalization as `g`.
    pub modulus: GridFn,
    /// Grid index of `t = 0`, where the modulus was clamped.
    pub clamped_index: usize,
    /// Largest `|1/g|` over the grid.
    pub max_inverse: f64,
}

/// The modulus at parameter `t`, with `t = 0` replaced by `floor`.
pub fn example53_modulus(t: f64, floor: f64) -> f64 {
    let t = t.abs().max(floor);
    1.0 / (t.sqrt() * (2.0 / t).ln())
}

pub fn example53_g(grid: UnitGrid) -> Result<Example53, OpError> {
    let m = grid.size();
    if m < 512 {
        return Err(OpError::InvalidArgument(format!("grid size {m} is below 512")));
    }
    let step = 2.0 / m as f64;
    let raw: Vec<Complex64> = (0..m)
        .map(|k| {
            let mut t = grid.angle(k) / std::f64::consts::PI;
            if t > 1.0 {
                t -= 2.0;
            }
            Complex64::new(example53_modulus(t, step), 0.0)
        })
        .collect();
    let w = GridFn::new(grid, raw)?;
    let outer = outer_from_modulus(&w)?;
    let norm = outer.function.norm();
    let inv = Complex64::new(1.0 / norm, 0.0);
    let g = outer.function.scale(inv);
    let max_inverse = outer.samples.values().iter().map(|v| norm / v.norm()).fold(0.0, f64::max);
    Ok(Example53 { g, modulus: w.map(|v| v * inv), clamped_index: 0, max_inverse })
}

/// `T = XSX⁻¹` and `T' = X⁻¹(S - 𝟏⊗S*g)X` where `X = Y^{-1/2}` and `Y` is the
/// identity off `E = span{𝟏, g}`.
#[derive(Debug, Clone)]
pub struct Example55 {
    pub t: TruncOp,
    pub t_prime: TruncOp,
    pub x: CMatrix,
    pub x_inv: CMatrix,
    /// Spanning vector of `ker T*`.
    pub cokernel_t: CVector,
    /// Spanning vector of `ker T'*`.
    pub cokernel_t_prime: CVector,
}

fn sqrt_power(y0: &CMatrix, power: f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(y0);
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| Complex64::new(v.powf(power), 0.0)),
    ));
    &vecs * d * vecs.adjoint()
}

pub fn example55_pair(g: &TrigPoly, a: f64, n: usize) -> Result<Example55, OpError> {
    if !g.is_analytic() {
        return Err(OpError::InvalidArgument("g must be analytic".into()));
    }
    let deg = g.degree().unwrap_or(0) as usize;
    if n < deg + 2 {
        return Err(OpError::InvalidArgument(format!("n = {n} is too small for deg g = {deg}")));
    }
    if (g.coeff(0) - C1).norm() > 1e-12 {
        return Err(OpError::InvalidArgument("g(0) must equal 1".into()));
    }
    let coeffs = g.analytic_coeffs(n);
    let tail: Vec<Complex64> = coeffs[1..].to_vec();
    let s = tail.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if s < 1e-14 {
        return Err(OpError::InvalidArgument("S*g vanishes".into()));
    }
    if a <= s * s {
        return Err(OpError::InvalidArgument(format!("a = {a} must exceed ‖S*g‖² = {}", s * s)));
    }
    // orthonormal basis of E: (g - 1)/s and 𝟏
    let mut d = CMatrix::zeros(n, 2);
    for (j, z) in tail.iter().enumerate() {
        d[(j + 1, 0)] = z / s;
    }
    d[(0, 1)] = C1;
    let y0 = CMatrix::from_row_slice(2, 2, &[
        Complex64::new(a, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(s, 0.0),
        C1,
    ]);
    let i2 = identity(2);
    let x = identity(n) + &d * (sqrt_power(&y0, -0.5) - &i2) * d.adjoint();
    let x_inv = identity(n) + &d * (sqrt_power(&y0, 0.5) - &i2) * d.adjoint();
    let s_n = shift(n, 1)?.into_matrix();
    let mut coshift = CMatrix::zeros(n, n);
    // 𝟏 ⊗ S*g : x ↦ ⟨x, S*g⟩ 𝟏
    for (j, z) in tail.iter().enumerate() {
        coshift[(0, j)] = z.conj();
    }
    let band = n - deg - 1;
    let t = TruncOp::new("example55_T", n, 1, band, &x * &s_n * &x_inv)?;
    let t_prime = TruncOp::new("example55_T_prime", n, 1, band, &x_inv * (s_n - coshift) * &x)?;
    let mut e0 = CVector::zeros(n);
    e0[0] = C1;
    let gv = CVector::from_iterator(n, coeffs.iter().copied());
    let cokernel_t = &x_inv * e0;
    let cokernel_t_prime = &x * gv;
    Ok(Example55 { t, t_prime, x, x_inv, cokernel_t, cokernel_t_prime })
}
