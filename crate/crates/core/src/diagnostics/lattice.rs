//! Finite-section experiments on invariant-subspace lattices: the column
//! subspaces of the `Θ` matrix built from a Frostman shift, and the model
//! space decomposition `K_{θβ} = θK_β ⊕ K_θ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DiagError, Verdict, RANK_TOL};
use crate::hardy_core::UnitGrid;
use crate::inner_fn::{model_basis, BlaschkeProduct};
use crate::linalg::{identity, max_abs, numeric_rank, orthonormal_basis, principal_cosines, singular_values, spectral_norm, CMatrix};
use crate::op_lab::TruncOp;
use crate::series;

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Coefficient tail below which a shifted column counts as captured.
const CAPTURE_TOL: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct Lemma46Config {
    pub theta: BlaschkeProduct,
    pub a: Complex64,
    pub eps: f64,
    /// Number of copies `N ≥ 2`.
    pub blocks: usize,
    /// Truncation dimension per copy.
    pub dim: usize,
    pub delta0: f64,
    /// Operator on `H²_N` (copy-major); the identity when absent.
    pub z: Option<TruncOp>,
    pub grid: usize,
}

impl Lemma46Config {
    pub fn new(theta: BlaschkeProduct, a: Complex64, eps: f64, blocks: usize, dim: usize) -> Self {
        Self { theta, a, eps, blocks, dim, delta0: 1.0, z: None, grid: 512 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnBound {
    /// One-based column index.
    pub column: usize,
    /// `min ‖ZΘ_j h‖/‖Θ_j h‖` over the band.
    pub measured: f64,
    /// Lower bound predicted from `δ₀`, `‖Z‖`, `|a|` and `ε`.
    pub predicted: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma46Report {
    pub band: usize,
    /// Max over the grid of `|det Θ - (1-ε²)^{1/2} ε^{N-1} (θ_a - θ)|`.
    pub det_error: f64,
    /// Same, against the rational closed form in `θ`.
    pub det_closed_form_error: f64,
    pub norm_z: f64,
    /// `min ‖Z(θh ⊕ 0)‖/‖h‖` over the band.
    pub precondition_sigma: f64,
    pub columns: Vec<ColumnBound>,
    /// Numeric rank of `Θ(0)`; `det Θ` is outer, so anything below `N`
    /// means the matrix degenerated.
    pub interior_rank: usize,
    /// Numeric rank of all truncated column vectors together, against
    /// `N·band`. Boundary zeros of `det Θ` make this drop as the band grows.
    pub column_span_rank: usize,
    pub degenerate: bool,
    pub verdicts: Vec<Verdict>,
}

/// First index from which the coefficient tail of `s` is negligible.
fn capture_index(s: &[Complex64]) -> usize {
    let scale = series::norm(s).max(1.0);
    let mut tail = 0.0f64;
    for j in (0..s.len()).rev() {
        let next = tail + s[j].norm_sqr();
        if next.sqrt() > CAPTURE_TOL * scale {
            return j + 1;
        }
        tail = next;
    }
    0
}

/// The `N×N` matrix `Θ` at a point where `θ = t` and `θ_a = ta`.
fn theta_matrix(n: usize, eps: f64, t: Complex64, ta: Complex64) -> CMatrix {
    let s = (1.0 - eps * eps).sqrt();
    let mut m = CMatrix::zeros(n, n);
    m[(0, 0)] = ta * s;
    for j in 1..n {
        m[(0, j)] = t * s;
    }
    m[(1, 0)] = Complex64::new(eps, 0.0);
    for j in 1..n {
        m[(j, j)] = Complex64::new(eps, 0.0);
    }
    m
}

pub fn lemma46_theta_experiment(cfg: &Lemma46Config) -> Result<Lemma46Report, DiagError> {
    let (nb, n, eps, a) = (cfg.blocks, cfg.dim, cfg.eps, cfg.a);
    if nb < 2 {
        return Err(DiagError::Precondition(format!("need at least two copies, got {nb}")));
    }
    if !(0.0..1.0).contains(&eps) || !(a.norm() > 0.0 && a.norm() < 1.0) {
        return Err(DiagError::Precondition(format!("need 0 ≤ ε < 1 and 0 < |a| < 1, got ε = {eps}, |a| = {}", a.norm())));
    }
    let total = nb * n;
    let z = match &cfg.z {
        Some(z) => {
            if z.total_dim() != total {
                return Err(DiagError::Shape(format!("Z has dimension {}, expected {total}", z.total_dim())));
            }
            z.matrix().clone()
        }
        None => identity(total),
    };
    let norm_z = spectral_norm(&z);

    // Taylor data of θ and θ_a = (N - aD)/(D - āN)
    let (num, den) = cfg.theta.numerator_denominator();
    let len = 2 * n;
    let theta = series::div(&num, &den, len);
    let theta_a = series::div(&series::sub(&num, &series::scale(&den, a)), &series::sub(&den, &series::scale(&num, a.conj())), len);
    let captured = capture_index(&theta[..]).max(capture_index(&theta_a[..]));
    if captured >= n {
        return Err(DiagError::InsufficientBand { band: 0, reason: format!("θ_a needs {captured} coefficients, dim is {n}") });
    }
    let band = n - captured;
    let s = (1.0 - eps * eps).sqrt();

    let column_vectors = |j: usize| -> CMatrix {
        let mut v = CMatrix::zeros(total, band);
        let first = if j == 0 { &theta_a } else { &theta };
        for m in 0..band {
            for r in 0..n - m {
                v[(r + m, m)] = first[r] * s;
            }
            let row = if j == 0 { 1 } else { j };
            v[(row * n + m, m)] = Complex64::new(eps, 0.0);
        }
        v
    };
    let lower_bound = |v: &CMatrix| -> f64 {
        let q = orthonormal_basis(v, 1e-12);
        singular_values(&(&z * q)).last().copied().unwrap_or(0.0)
    };

    let mut pre = CMatrix::zeros(total, band);
    for m in 0..band {
        for r in 0..n - m {
            pre[(r + m, m)] = theta[r];
        }
    }
    let precondition_sigma = lower_bound(&pre);
    if precondition_sigma < cfg.delta0 - 1e-10 {
        return Err(DiagError::Precondition(format!(
            "‖Z(θh ⊕ 0)‖ ≥ δ₀‖h‖ fails: measured {precondition_sigma}, δ₀ = {}",
            cfg.delta0
        )));
    }

    let abs_a = a.norm();
    let mut columns = Vec::with_capacity(nb);
    let mut verdicts = Vec::new();
    let mut all = CMatrix::zeros(total, nb * band);
    for j in 0..nb {
        let v = column_vectors(j);
        all.view_mut((0, j * band), (total, band)).copy_from(&v);
        let measured = lower_bound(&v);
        let predicted = if j == 0 {
            s / (1.0 - abs_a) * (cfg.delta0 * (1.0 - 2.0 * abs_a - 3.0 * abs_a * abs_a).max(0.0).sqrt() - 2.0 * abs_a * norm_z)
                - norm_z * eps
        } else {
            s * cfg.delta0 - norm_z * eps
        };
        let ratio = if predicted > 0.0 { measured / predicted } else { f64::INFINITY };
        verdicts.push(
            Verdict::at_least(&format!("lemma46_column_{}", j + 1), measured, 0.98 * predicted, band, vec![n, nb])
                .with_param("predicted", predicted)
                .with_param("ratio", ratio),
        );
        columns.push(ColumnBound { column: j + 1, measured, predicted, ratio });
    }

    let grid = UnitGrid::new(cfg.grid)?;
    let scale = s * eps.powi(nb as i32 - 1);
    let mut det_error = 0.0f64;
    let mut det_closed_form_error = 0.0f64;
    for zeta in grid.points() {
        let t = cfg.theta.eval(zeta);
        let ta = (t - a) / (C1 - a.conj() * t);
        let m = theta_matrix(nb, eps, t, ta);
        let det = m.clone().determinant();
        det_error = det_error.max((det - scale * (ta - t)).norm());
        let closed = -scale * a * (C1 - a.conj() / a * t * t) / (C1 - a.conj() * t);
        det_closed_form_error = det_closed_form_error.max((det - closed).norm());
    }
    verdicts.push(Verdict::at_most("lemma46_det_formula", det_error, 1e-9, band, vec![cfg.grid, nb]));
    verdicts.push(Verdict::at_most("lemma46_det_closed_form", det_closed_form_error, 1e-9, band, vec![cfg.grid, nb]));
    let t0 = cfg.theta.eval(Complex64::default());
    let interior_rank = numeric_rank(&theta_matrix(nb, eps, t0, (t0 - a) / (C1 - a.conj() * t0)), RANK_TOL);
    let column_span_rank = numeric_rank(&all, RANK_TOL);
    let degenerate = interior_rank < nb;
    Ok(Lemma46Report {
        band,
        det_error,
        det_closed_form_error,
        norm_z,
        precondition_sigma,
        columns,
        interior_rank,
        column_span_rank,
        degenerate,
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma61Report {
    pub dim_theta: usize,
    pub dim_beta: usize,
    pub dim_product: usize,
    /// `max |⟨θe, f⟩|` over basis vectors `e ∈ K_β`, `f ∈ K_θ`.
    pub orthogonality: f64,
    /// Distance of the `θK_β ∪ K_θ` basis to `K_{θβ}`.
    pub membership_residual: f64,
    /// Numeric rank of `θK_β ∪ K_θ`.
    pub decomposition_rank: usize,
    /// Distance of `(θ-1)K_β` basis vectors to `K_{θβ}`.
    pub inclusion_residual: f64,
    /// Principal cosines between `K_θ + (θ-1)K_β` and a band of `βH²`.
    pub cap_cosines: Vec<f64>,
    /// Number of cosines within `1e-8` of one.
    pub intersection_dim: usize,
    pub density_impossible: bool,
    pub notes: Vec<String>,
    pub verdicts: Vec<Verdict>,
}

/// Residual norm of `v` after projecting onto the orthonormal vectors `basis`.
fn residual(v: &[Complex64], basis: &[Vec<Complex64>]) -> f64 {
    let mut r = v.to_vec();
    for e in basis {
        let c = series::inner(v, e);
        for (x, y) in r.iter_mut().zip(e.iter()) {
            *x -= c * y;
        }
    }
    series::norm(&r)
}

fn as_columns(vs: &[Vec<Complex64>], len: usize) -> CMatrix {
    CMatrix::from_fn(len, vs.len(), |i, j| vs[j][i])
}

pub fn lemma61_intersection_metrics(theta: &BlaschkeProduct, beta: &BlaschkeProduct) -> Lemma61Report {
    let product = theta.product(beta);
    let base = crate::op_lab::gram_len(&[theta, beta], 32);
    let len = 2 * base;
    let th = theta.taylor(len);
    let bt = beta.taylor(len);
    let k_theta = model_basis(theta).vector_coeffs(len);
    let k_beta = model_basis(beta).vector_coeffs(len);
    let k_product = model_basis(&product).vector_coeffs(len);
    let theta_k_beta: Vec<Vec<Complex64>> = k_beta.iter().map(|e| series::mul(&th, e, len)).collect();

    let orthogonality = theta_k_beta
        .iter()
        .flat_map(|u| k_theta.iter().map(move |v| series::inner(u, v).norm()))
        .fold(0.0, f64::max);
    let union: Vec<Vec<Complex64>> = theta_k_beta.iter().chain(k_theta.iter()).cloned().collect();
    let membership_residual = union.iter().map(|v| residual(v, &k_product)).fold(0.0, f64::max);
    let decomposition_rank = if union.is_empty() { 0 } else { numeric_rank(&as_columns(&union, len), RANK_TOL) };
    let orthonormality = if union.is_empty() {
        0.0
    } else {
        let u = as_columns(&union, len);
        max_abs(&(u.adjoint() * &u - identity(union.len())))
    };

    let shifted: Vec<Vec<Complex64>> = k_beta.iter().map(|e| series::sub(&series::mul(&th, e, len), e)).collect();
    let inclusion_residual = shifted.iter().map(|v| residual(v, &k_product)).fold(0.0, f64::max);

    let side: Vec<Vec<Complex64>> = k_theta.iter().chain(shifted.iter()).cloned().collect();
    let cap_cosines = if side.is_empty() {
        Vec::new()
    } else {
        let q1 = orthonormal_basis(&as_columns(&side, len), 1e-10);
        let beta_band: Vec<Vec<Complex64>> = (0..base).map(|m| series::shift_up(&bt, m)).collect();
        let q2 = orthonormal_basis(&as_columns(&beta_band, len), 1e-10);
        principal_cosines(&q1, &q2)
    };
    let intersection_dim = cap_cosines.iter().filter(|&&c| c >= 1.0 - 1e-8).count();

    let (dt, db, dp) = (theta.degree(), beta.degree(), product.degree());
    let density_impossible = db < dp;
    let mut notes = Vec::new();
    if density_impossible {
        notes.push(format!(
            "density impossible at finite degree: dim (θ-1)K_β = {db} < {dp} = dim K_θβ"
        ));
    }
    let dims = vec![dt, db, dp];
    let verdicts = vec![
        Verdict::at_most("lemma61_orthogonality", orthogonality.max(orthonormality), 1e-10, len, dims.clone()),
        Verdict::at_most("lemma61_membership", membership_residual, 1e-10, len, dims.clone()),
        Verdict::at_most("lemma61_dimension_gap", (dt + db).abs_diff(dp).max(decomposition_rank.abs_diff(dp)) as f64, 0.0, len, dims.clone()),
        Verdict::at_most("lemma61_inclusion", inclusion_residual, 1e-10, len, dims.clone()),
    ];
    Lemma61Report {
        dim_theta: dt,
        dim_beta: db,
        dim_product: dp,
        orthogonality,
        membership_residual,
        decomposition_rank,
        inclusion_residual,
        cap_cosines,
        intersection_dim,
        density_impossible,
        notes,
        verdicts,
    }
}
