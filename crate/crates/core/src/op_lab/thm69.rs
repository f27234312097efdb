//! The expansive perturbation `T = S + (1+(a-1)θ)β ⊗ βχ̄θ + bθβ ⊗ P₊(χ̄β)`
//! together with intertwiners `X` (with `XT = SX`) and `Y` (with `YS = TY`),
//! where `φ = a + b(θ-1)`.

#![allow(non_snake_case)]

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{gram_len, OpError, TruncOp};
use crate::inner_fn::{model_basis, BlaschkeProduct};
use crate::linalg::CMatrix;
use crate::series::{self, mul};

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm69Params {
    pub a: Complex64,
    pub b: Complex64,
    pub theta: BlaschkeProduct,
    pub beta: BlaschkeProduct,
}

impl Thm69Params {
    pub fn new(a: Complex64, b: Complex64, theta: BlaschkeProduct, beta: BlaschkeProduct) -> Result<Self, OpError> {
        if theta.origin_multiplicity() == 0 {
            return Err(OpError::InvalidArgument("θ(0) must vanish".into()));
        }
        let p = Self { a, b, theta, beta };
        let grid = 64;
        let phi_max = (0..grid)
            .map(|k| p.phi(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / grid as f64)).norm())
            .fold(0.0, f64::max);
        if phi_max < 1e-14 {
            return Err(OpError::InvalidArgument("φ = a + b(θ-1) vanishes identically".into()));
        }
        Ok(p)
    }

    pub fn phi(&self, z: Complex64) -> Complex64 {
        self.a + self.b * (self.theta.eval(z) - C1)
    }

    fn phi_series(&self, theta: &[Complex64]) -> Vec<Complex64> {
        let mut out = series::scale(theta, self.b);
        out[0] += self.a - self.b;
        out
    }

    /// Degree of `θβ`.
    pub fn degree(&self) -> usize {
        self.theta.degree() + self.beta.degree()
    }
}

fn pad_for(n: usize) -> usize {
    n
}

/// Coefficients of `T_{conj(β)} χ^k`, a polynomial of degree `k`.
fn coanalytic_monomial(beta: &[Complex64], k: usize, len: usize) -> Vec<Complex64> {
    let mut q = vec![Complex64::default(); len];
    for j in 0..len.min(k + 1) {
        q[j] = beta[k - j].conj();
    }
    q
}

pub fn thm69_T(p: &Thm69Params, n: usize) -> Result<TruncOp, OpError> {
    if n == 0 {
        return Err(OpError::InvalidArgument("n must be positive".into()));
    }
    let len = n + pad_for(n);
    let theta = p.theta.taylor(len + 1);
    let beta = p.beta.taylor(len + 1);
    let mut range_u = series::scale(&theta, p.a - C1);
    range_u[0] += C1;
    let range_u = mul(&range_u, &beta, len);
    let range_w = series::scale(&mul(&theta, &beta, len), p.b);
    let coef_v = mul(&beta, &series::backward_shift(&theta), len);
    let coef_z = series::backward_shift(&beta);
    let structural = n.saturating_sub(p.degree() + 1);
    Ok(TruncOp::from_columns("thm69_T", n, structural, len - n, |k, l| {
        let mut col = series::monomial(k + 1, l);
        let cv = coef_v[k].conj();
        let cz = coef_z[k].conj();
        for j in 0..l {
            col[j] += cv * range_u[j] + cz * range_w[j];
        }
        col
    }))
}

/// `X(θβh + βf + g) = (θ-1)βh + aβf + φg` for `h ∈ H²`, `f ∈ K_θ`, `g ∈ K_β`.
pub fn thm69_X(p: &Thm69Params, n: usize) -> Result<TruncOp, OpError> {
    let len = n + pad_for(n);
    let theta = p.theta.taylor(len + 1);
    let beta = p.beta.taylor(len + 1);
    let phi = p.phi_series(&theta[..len]);
    // β((1-a)θ - 1)
    let mut inner_factor = series::scale(&theta[..len], C1 - p.a);
    inner_factor[0] -= C1;
    let beta_inner = mul(&beta, &inner_factor, len);
    let phi_beta = mul(&phi, &beta, len);
    Ok(TruncOp::from_columns("thm69_X", n, n, len - n, |k, l| {
        // χ^k = β q + g with q = T_{β̄}χ^k, and q = θh + f with h = T_{θ̄}q
        let q = coanalytic_monomial(&beta, k, k + 1);
        let h = series::coanalytic_apply(&theta, &q);
        let mut col = series::shift_up(&series::fit(&phi, l), k);
        let bq = mul(&q, &beta, l);
        let pq = mul(&q, &phi_beta, l);
        let bh = mul(&h, &beta_inner, l);
        for j in 0..l {
            col[j] += p.a * bq[j] + bh[j] - pq[j];
        }
        col
    }))
}

/// `Y(βh + g) = θβφh + θP_{βH²}(φg) + (θ-1)g` for `h ∈ H²`, `g ∈ K_β`.
pub fn thm69_Y(p: &Thm69Params, n: usize) -> Result<TruncOp, OpError> {
    let len = n + pad_for(n);
    let glen = gram_len(&[&p.theta, &p.beta], len);
    let theta = p.theta.taylor(glen + 1);
    let beta = p.beta.taylor(glen + 1);
    let phi = p.phi_series(&theta[..glen]);
    let basis = model_basis(&p.beta).vector_coeffs(glen);
    let q = basis.len();
    // Φ_{li} = ⟨φ e_i, e_l⟩: matrix of the compression of φ to K_β
    let phi_e: Vec<Vec<Complex64>> = basis.iter().map(|e| mul(&phi, e, glen)).collect();
    let compressed_phi = CMatrix::from_fn(q, q, |l, i| series::inner(&phi_e[i], &basis[l]));
    let theta_phi = mul(&theta[..len], &phi[..len], len);
    let theta_e: Vec<Vec<Complex64>> = basis.iter().map(|e| mul(&theta[..len], &e[..len], len)).collect();
    let mut theta_minus_one = theta[..len].to_vec();
    theta_minus_one[0] -= C1;
    let tm1_beta = mul(&theta_minus_one, &beta[..len], len);
    Ok(TruncOp::from_columns("thm69_Y", n, n, len - n, |k, l| {
        // with h = T_{β̄}χ^k and g = χ^k - βh the θβφh terms cancel:
        // Yχ^k = χ^k θφ - θ P_{K_β}(φg) + χ^k(θ-1) - (θ-1)βh
        let h = coanalytic_monomial(&beta, k, k + 1);
        let coords: Vec<Complex64> = basis.iter().map(|e| e[k].conj()).collect();
        let proj: Vec<Complex64> = (0..q).map(|r| (0..q).map(|i| compressed_phi[(r, i)] * coords[i]).sum()).collect();
        let mut col = series::shift_up(&series::add(&theta_phi[..l], &theta_minus_one[..l]), k);
        let th = mul(&h, &tm1_beta, l);
        for j in 0..l {
            col[j] -= th[j];
            for (r, te) in theta_e.iter().enumerate() {
                col[j] -= proj[r] * te[j];
            }
        }
        col
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_case_closed_form() {
        // θ = χ, β = 𝟏, a = 1, b = 0 gives T = S + 𝟏 ⊗ 𝟏
        let p = Thm69Params::new(C1, Complex64::default(), BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(0)).unwrap();
        let t = thm69_T(&p, 6).unwrap();
        let m = t.matrix();
        assert_eq!(m[(0, 0)], C1);
        assert_eq!(m[(1, 0)], C1);
        assert_eq!(m[(0, 1)], Complex64::default());
        assert_eq!(m[(2, 1)], C1);
    }

    fn residuals(p: &Thm69Params, n: usize) -> (f64, f64, usize, usize) {
        use crate::linalg::{max_abs, select};
        let t = thm69_T(p, n).unwrap();
        let x = thm69_X(p, n).unwrap();
        let y = thm69_Y(p, n).unwrap();
        let s = crate::op_lab::shift(n, 1).unwrap();
        let rows: Vec<usize> = (0..n).collect();
        let tb: Vec<usize> = (0..t.trust_band()).collect();
        let xt = select(&(x.matrix() * t.matrix() - s.matrix() * x.matrix()), &rows, &tb);
        let yb: Vec<usize> = (0..y.trust_band().min(n - 1)).collect();
        let ys = select(&(y.matrix() * s.matrix() - t.matrix() * y.matrix()), &rows, &yb);
        (max_abs(&xt), max_abs(&ys), tb.len(), yb.len())
    }

    #[test]
    fn intertwining_holds_on_band() {
        let half = BlaschkeProduct::from_points(&[Complex64::new(0.5, 0.0)]).unwrap();
        let two = BlaschkeProduct::new(vec![(Complex64::new(0.2, -0.3), 2), (Complex64::new(-0.25, 0.1), 1)]).unwrap();
        let theta2 = BlaschkeProduct::new(vec![(Complex64::default(), 1), (Complex64::new(0.0, 0.3), 1)]).unwrap();
        let cases = [
            (C1, -C1, BlaschkeProduct::monomial(2), half.clone()),
            (Complex64::new(0.3, 0.4), Complex64::new(-1.2, 0.5), theta2, two),
            (Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0), BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(3)),
        ];
        for (a, b, theta, beta) in cases {
            let p = Thm69Params::new(a, b, theta, beta).unwrap();
            let (xt, ys, tb, yb) = residuals(&p, 96);
            assert!(tb > 60 && yb > 40, "bands {tb} {yb}");
            assert!(xt < 1e-12, "XT - SX = {xt:e}");
            assert!(ys < 1e-12, "YS - TY = {ys:e}");
        }
    }

    #[test]
    fn rejects_vanishing_phi() {
        let r = Thm69Params::new(Complex64::default(), Complex64::default(), BlaschkeProduct::monomial(1), BlaschkeProduct::monomial(1));
        assert!(r.is_err());
    }
}
