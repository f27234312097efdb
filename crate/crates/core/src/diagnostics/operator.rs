//! Verdicts on single operators and operator pairs.

#![allow(non_snake_case)]

use num_complex::Complex64;

use super::{DiagError, SubspaceBasis, Verdict};
use crate::hardy_core::{riesz_plus, TrigPoly};
use crate::inner_fn::BlaschkeProduct;
use crate::linalg::{
    hermitian_eigenvalues, identity, numeric_rank, orthonormal_basis, projector, select, singular_values,
    spectral_norm, CMatrix,
};
use crate::op_lab::TruncOp;
use crate::series;

/// Smallest eigenvalue of `T*T - I` accepted as expansive.
pub const EXPANSIVE_TOL: f64 = -1e-10;
/// Largest accepted intertwining residual.
pub const INTERTWINING_TOL: f64 = 1e-9;
/// Relative singular-value threshold for numeric ranks.
pub const RANK_TOL: f64 = 1e-7;
/// Largest accepted invariance residual for [`wandering_dim`].
pub const INVARIANCE_TOL: f64 = 1e-8;

/// `T*T - I` on the trusted columns.
fn band_defect(t: &TruncOp) -> CMatrix {
    let m = t.band_block();
    let k = m.ncols();
    m.adjoint() * &m - identity(k)
}

/// Smallest eigenvalue of the band compression of `T*T - I`.
pub fn expansivity_defect(t: &TruncOp) -> Verdict {
    let band = t.trust_band();
    let min = hermitian_eigenvalues(&band_defect(t)).into_iter().fold(f64::INFINITY, f64::min);
    let value = if min.is_finite() { min } else { 0.0 };
    Verdict::at_least("expansivity_defect", value, EXPANSIVE_TOL, band, vec![t.dim(), t.copies()])
        .with_param("tag", t.tag())
}

/// The matrix of `T*T - I` on its range for the `θβ` perturbation, in the
/// orthonormal basis `{βχ̄θ, S*β/p}` with `p = ‖S*β‖`.
///
/// The verdict passes iff the matrix is positive semidefinite; the sign
/// test `2 Re(āb) ≤ -1` is attached as a parameter.
pub fn thm69_A_matrix(a: Complex64, b: Complex64, beta: &BlaschkeProduct) -> Result<(CMatrix, Verdict), DiagError> {
    let len = beta.support_len(1e-18).max(8) + 8;
    let coeffs = beta.taylor(len);
    let p = series::norm(&coeffs[1..]);
    if p < 1e-14 {
        return Err(DiagError::Precondition("β is constant, so S*β = 0".into()));
    }
    let off = (a.conj() * b + 1.0) * p;
    let m = CMatrix::from_row_slice(2, 2, &[
        Complex64::new(a.norm_sqr(), 0.0),
        off,
        off.conj(),
        Complex64::new(b.norm_sqr() * p * p, 0.0),
    ]);
    // closed-form eigenvalues of the Hermitian 2×2 keep the boundary case exact
    let tr = a.norm_sqr() + b.norm_sqr() * p * p;
    let det = a.norm_sqr() * b.norm_sqr() * p * p - off.norm_sqr();
    let disc = ((0.5 * tr).powi(2) - det).max(0.0).sqrt();
    let min_eig = if 0.5 * tr - disc != 0.0 && 0.5 * tr + disc != 0.0 {
        det / (0.5 * tr + disc)
    } else {
        0.5 * tr - disc
    };
    let criterion = 2.0 * (a.conj() * b).re <= -1.0;
    let v = Verdict::at_least("thm69_A_psd", min_eig, -1e-12, 2, vec![2])
        .with_param("p", p)
        .with_param("det", det)
        .with_param("two_re_conj_a_b", 2.0 * (a.conj() * b).re)
        .with_param("criterion", criterion);
    Ok((m, v))
}

/// Trace norm of `I - T*T` on the trust band.
pub fn trace_norm_defect(t: &TruncOp) -> f64 {
    hermitian_eigenvalues(&band_defect(t)).iter().map(|v| v.abs()).sum()
}

/// Trace norms of the band defect across `dims`; passes iff the last two
/// values differ by at most `tol`.
pub fn defect_trace_profile<F, E>(build: F, dims: &[usize], tol: f64) -> Result<(Vec<f64>, Verdict), E>
where
    F: Fn(usize) -> Result<TruncOp, E>,
{
    let mut out = Vec::with_capacity(dims.len());
    let mut band = 0;
    for &n in dims {
        let t = build(n)?;
        band = t.trust_band();
        out.push(trace_norm_defect(&t));
    }
    let spread = match out.len() {
        0 | 1 => 0.0,
        k => (out[k - 1] - out[k - 2]).abs(),
    };
    let v = Verdict::at_most("defect_trace_profile", spread, tol, band, dims.to_vec()).with_param("profile", &out);
    Ok((out, v))
}

/// Spectral norm of `XA - BX` on the columns trusted by both `A` and `X`.
///
/// Column `k` of `X_n A_n` is exact once `Aχ^k` is captured; column `k` of
/// `B_n X_n` is exact once `Xχ^k` is captured and `B` reads no coefficient
/// past the truncation, which holds for the lower Hessenberg operators built
/// here.
pub fn intertwining_residual(x: &TruncOp, a: &TruncOp, b: &TruncOp) -> Result<Verdict, DiagError> {
    let n = a.total_dim();
    if x.total_dim() != n || b.total_dim() != n || x.copies() != a.copies() || b.copies() != a.copies() {
        return Err(DiagError::Shape(format!(
            "X is {}, A is {}, B is {}",
            x.total_dim(),
            a.total_dim(),
            b.total_dim()
        )));
    }
    let band = a.trust_band().min(x.trust_band());
    let cols = crate::op_lab::band_indices(a.dim(), a.copies(), band);
    let rows: Vec<usize> = (0..n).collect();
    let diff = x.matrix() * a.matrix() - b.matrix() * x.matrix();
    let value = if cols.is_empty() { 0.0 } else { spectral_norm(&select(&diff, &rows, &cols)) };
    Ok(Verdict::at_most("intertwining_residual", value, INTERTWINING_TOL, band, vec![a.dim(), a.copies()])
        .with_param("x", x.tag())
        .with_param("a", a.tag())
        .with_param("b", b.tag()))
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuasiaffinityMetrics {
    /// Smallest singular value of the trusted columns.
    pub sigma_min_band: f64,
    /// Largest distance from `χ^k`, `k < band/2`, to the span of the trusted
    /// columns.
    pub range_defect: f64,
    pub band: usize,
}

/// Finite-section proxies for injectivity and dense range. Neither is a
/// certificate, so no verdict is attached.
pub fn quasiaffinity_metrics(x: &TruncOp) -> QuasiaffinityMetrics {
    let m = x.band_block();
    let band = x.trust_band();
    if m.ncols() == 0 {
        return QuasiaffinityMetrics { sigma_min_band: 0.0, range_defect: 1.0, band };
    }
    let sv = singular_values(&m);
    let sigma_min_band = sv.last().copied().unwrap_or(0.0);
    let q = orthonormal_basis(&m, 1e-12);
    let probes: Vec<usize> = (0..x.copies()).flat_map(|c| (0..band.div_ceil(2)).map(move |k| c * x.dim() + k)).collect();
    let range_defect = probes
        .iter()
        .map(|&k| {
            let coeffs = q.row(k).adjoint();
            let proj_norm_sq: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum();
            (1.0 - proj_norm_sq).max(0.0).sqrt()
        })
        .fold(0.0, f64::max);
    QuasiaffinityMetrics { sigma_min_band, range_defect, band }
}

/// `‖Y|_M‖‖(Y|_M)⁻¹‖`, or infinity when the restriction is numerically
/// singular.
pub fn similarity_condition(y: &TruncOp, m: &SubspaceBasis) -> Result<f64, DiagError> {
    if m.ambient_dim() != y.total_dim() {
        return Err(DiagError::Shape(format!("subspace lives in dimension {}, Y in {}", m.ambient_dim(), y.total_dim())));
    }
    let sv = singular_values(&(y.matrix() * m.basis()));
    let (hi, lo) = (sv.first().copied().unwrap_or(0.0), sv.last().copied().unwrap_or(0.0));
    Ok(if lo < 1e-12 { f64::INFINITY } else { hi / lo })
}

/// `dim(M ⊖ TM)` as the numeric rank of `P_M - P_{TM}`.
pub fn wandering_dim(t: &TruncOp, m: &SubspaceBasis) -> Result<usize, DiagError> {
    if m.ambient_dim() != t.total_dim() {
        return Err(DiagError::Shape(format!("subspace lives in dimension {}, T in {}", m.ambient_dim(), t.total_dim())));
    }
    let q = m.basis();
    let image = t.matrix() * q;
    let p_m = projector(q);
    let residual = spectral_norm(&(&image - &p_m * &image));
    let scale = spectral_norm(t.matrix()).max(1.0);
    if residual > INVARIANCE_TOL * scale {
        return Err(DiagError::NotInvariant { residual });
    }
    let p_tm = projector(&orthonormal_basis(&image, 1e-10));
    Ok(numeric_rank(&(p_m - p_tm), RANK_TOL))
}

/// Norms of the compressions of `T_{1-ω}T_ḡ` for `g/‖g‖`, where
/// `1/(1-ω) = P₊|g|²`. Compressions are exact because `T_{1-ω}` is lower
/// triangular. Passes iff the relative increase over the last step is at
/// most `tol`.
pub fn omega_profile(g: &TrigPoly, dims: &[usize], tol: f64) -> Result<(Vec<f64>, Verdict), DiagError> {
    if !g.is_analytic() || g.norm() == 0.0 {
        return Err(DiagError::Precondition("g must be a nonzero analytic polynomial".into()));
    }
    let g = g.scale(Complex64::new(1.0 / g.norm(), 0.0));
    let sq = riesz_plus(&g.mul(&g.conj()));
    let nmax = dims.iter().copied().max().unwrap_or(0);
    let cauchy = sq.analytic_coeffs(nmax.max(1));
    let one_minus_omega = series::div(&[Complex64::new(1.0, 0.0)], &cauchy, nmax.max(1));
    let mut out = Vec::with_capacity(dims.len());
    for &n in dims {
        let lower = CMatrix::from_fn(n, n, |j, k| if j >= k { one_minus_omega[j - k] } else { Complex64::default() });
        let upper = CMatrix::from_fn(n, n, |j, k| if k >= j { g.coeff((k - j) as i64).conj() } else { Complex64::default() });
        out.push(spectral_norm(&(lower * upper)));
    }
    let growth = match out.len() {
        0 | 1 => 0.0,
        k => (out[k - 1] - out[k - 2]) / out[k - 1].max(f64::MIN_POSITIVE),
    };
    let v = Verdict::at_most("omega_boundedness", growth, tol, nmax, dims.to_vec()).with_param("profile", &out);
    Ok((out, v))
}
