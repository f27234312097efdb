use num_complex::Complex64;

use super::{shift, OpError, TruncOp};
use crate::hardy_core::TrigPoly;
use crate::inner_fn::BlaschkeProduct;

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn analytic_degree(f: &TrigPoly, what: &str) -> Result<usize, OpError> {
    if !f.is_analytic() {
        return Err(OpError::InvalidArgument(format!("{what} must be analytic")));
    }
    Ok(f.degree().map(|d| d as usize).unwrap_or(0))
}

/// `T = S - 𝟏 ⊗ S*g` for analytic `g` with `g(0) = 1`.
pub fn perturb_lemma32(g: &TrigPoly, n: usize) -> Result<TruncOp, OpError> {
    let deg = analytic_degree(g, "g")?;
    if (g.coeff(0) - C1).norm() > 1e-12 {
        return Err(OpError::InvalidArgument(format!("g(0) must be 1, got {}", g.coeff(0))));
    }
    if deg >= n {
        return Err(OpError::InvalidArgument(format!("deg g = {deg} must be below n = {n}")));
    }
    let mut m = shift(n, 1)?.into_matrix();
    for k in 0..n {
        m[(0, k)] -= g.coeff(k as i64 + 1).conj();
    }
    Ok(TruncOp::from_parts("perturb_lemma32", n, 1, n - deg.max(1), m))
}

/// `T = S_N + Σ_k e_k ⊗ f_k` on `H²_N`, where `f_list[k]` holds the `N`
/// analytic components of `f_k`.
pub fn perturb_lemma36(f_list: &[Vec<TrigPoly>], n: usize) -> Result<TruncOp, OpError> {
    let copies = f_list.len();
    if copies == 0 || f_list.iter().any(|f| f.len() != copies) {
        return Err(OpError::InvalidArgument("need N columns with N components each".into()));
    }
    let mut deg = 0;
    for f in f_list.iter().flatten() {
        deg = deg.max(analytic_degree(f, "f_k components")?);
    }
    if deg >= n {
        return Err(OpError::InvalidArgument(format!("degree {deg} must be below n = {n}")));
    }
    let mut m = shift(n, copies)?.into_matrix();
    for (k, f) in f_list.iter().enumerate() {
        for (j, comp) in f.iter().enumerate() {
            for deg_m in 0..n {
                m[(k * n, j * n + deg_m)] += comp.coeff(deg_m as i64).conj();
            }
        }
    }
    Ok(TruncOp::from_parts("perturb_lemma36", n, copies, n - deg.max(1), m))
}

/// `det(I - χF)` with `F = [f_1, …, f_N]` (column `k` is `f_k`).
pub fn lemma36_psi(f_list: &[Vec<TrigPoly>]) -> TrigPoly {
    let n = f_list.len();
    let entries: Vec<Vec<TrigPoly>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let delta = if j == k { TrigPoly::constant(C1) } else { TrigPoly::zero() };
                    delta.sub(&f_list[k][j].shift(1))
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

fn poly_det(m: &[Vec<TrigPoly>]) -> TrigPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = TrigPoly::zero();
    for col in 0..n {
        let minor: Vec<Vec<TrigPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][col].mul(&poly_det(&minor));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// `T = S + 𝟏 ⊗ conj(χ)B` for `B(0) = 0`.
pub fn example_plus_clark(b: &BlaschkeProduct, n: usize) -> Result<TruncOp, OpError> {
    if b.origin_multiplicity() == 0 {
        return Err(OpError::InvalidArgument("B(0) must vanish".into()));
    }
    let taylor = b.taylor(n + 1);
    let mut m = shift(n, 1)?.into_matrix();
    for k in 0..n {
        m[(0, k)] += taylor[k + 1].conj();
    }
    Ok(TruncOp::from_parts("example_plus_clark", n, 1, n - 1, m))
}
