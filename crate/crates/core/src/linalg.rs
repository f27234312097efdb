//! Dense complex linear algebra helpers built on nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest singular value of a tall or square matrix (zero if the matrix
/// has more columns than rows).
pub fn min_singular_value(m: &CMatrix) -> f64 {
    if m.ncols() > m.nrows() {
        return 0.0;
    }
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let h = hermitian_part(m);
    let mut e: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending, with
/// eigenvectors as matching columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = hermitian_part(m);
    let eig = h.symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (vals, vecs)
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Eigenvalues of a general complex square matrix via the Schur form.
pub fn eigenvalues(m: &CMatrix) -> Option<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Some(Vec::new());
    }
    let (_, t) = schur(m)?;
    Some((0..m.nrows()).map(|i| t[(i, i)]).collect())
}

/// Schur decomposition `m = Q T Q*`.
///
/// Shifted QR can stall on highly symmetric inputs such as cyclic
/// permutations; those are retried after a fixed Householder similarity.
pub fn schur(m: &CMatrix) -> Option<(CMatrix, CMatrix)> {
    if let Some(s) = m.clone().try_schur(1e-15, 10_000) {
        return Some(s.unpack());
    }
    let n = m.nrows();
    for seed in 1..=3 {
        let v = CVector::from_fn(n, |i, _| {
            let x = (i * seed) as f64;
            c(1.0 + (0.7 * x).sin(), (1.3 * x + seed as f64).cos())
        });
        let h = identity(n) - (&v * v.adjoint()) * c(2.0 / v.norm_squared(), 0.0);
        if let Some(s) = (&h * m * &h).try_schur(1e-15, 10_000) {
            let (q, t) = s.unpack();
            return Some((h * q, t));
        }
    }
    None
}

/// Orthonormal basis of the column span, keeping singular directions above
/// `rel_tol` times the largest singular value.
pub fn orthonormal_basis(m: &CMatrix, rel_tol: f64) -> CMatrix {
    if m.ncols() == 0 || m.nrows() == 0 {
        return CMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > rel_tol * smax)
        .collect();
    CMatrix::from_fn(m.nrows(), keep.len(), |r, k| u[(r, keep[k])])
}

/// Numerical rank with threshold `rel_tol` times the spectral norm.
pub fn numeric_rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&smax) if smax > 0.0 => s.iter().filter(|&&v| v > rel_tol * smax).count(),
        _ => 0,
    }
}

/// Cosines of the principal angles between the spans of two orthonormal
/// column sets, descending.
pub fn principal_cosines(q1: &CMatrix, q2: &CMatrix) -> Vec<f64> {
    if q1.ncols() == 0 || q2.ncols() == 0 {
        return Vec::new();
    }
    singular_values(&(q1.adjoint() * q2))
        .into_iter()
        .map(|v| v.min(1.0))
        .collect()
}

/// Orthogonal projector onto the span of orthonormal columns.
pub fn projector(q: &CMatrix) -> CMatrix {
    q * q.adjoint()
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Zero-padded or cropped copy of `m` with the given shape.
pub fn resized(m: &CMatrix, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |i, j| {
        if i < m.nrows() && j < m.ncols() {
            m[(i, j)]
        } else {
            C0
        }
    })
}

/// Submatrix with the given row and column index lists.
pub fn select(m: &CMatrix, rows: &[usize], cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Roots of the polynomial `Σ coeffs[k] z^k` via companion-matrix eigenvalues
/// followed by Newton polishing.
pub fn poly_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1] == C0 {
        deg -= 1;
    }
    if deg <= 1 {
        return Some(Vec::new());
    }
    let d = deg - 1;
    let lead = coeffs[d];
    let mut comp = CMatrix::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = C1;
    }
    for i in 0..d {
        comp[(i, d - 1)] = -coeffs[i] / lead;
    }
    let mut roots = eigenvalues(&comp)?;
    for r in roots.iter_mut() {
        *r = newton_polish(&coeffs[..deg], *r, 8);
    }
    Some(roots)
}

fn newton_polish(coeffs: &[Complex64], mut z: Complex64, iters: usize) -> Complex64 {
    for _ in 0..iters {
        let (p, dp) = horner_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        let next = z - step;
        let (pn, _) = horner_with_derivative(coeffs, next);
        if pn.norm() > p.norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-17 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

pub fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = C0;
    let mut dp = C0;
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(C0, |acc, &a| acc * z + a)
}

/// Solves `G x = b` for Hermitian positive-definite `G`.
pub fn spd_solve(g: &CMatrix, b: &CMatrix) -> Option<CMatrix> {
    let ch = g.clone().cholesky()?;
    Some(ch.solve(b))
}
