use num_complex::Complex64;

use super::blaschke::factor;
use super::BlaschkeProduct;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Orthonormal basis of the model space of a finite Blaschke product:
/// `e_k = sqrt(1-|λ_k|²)/(1-conj(λ_k)z) · Π_{j<k} b_{λ_j}`
/// (origin zeros first, giving the monomials `1, z, …`).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelBasis {
    zeros: Vec<Complex64>,
}

pub fn model_basis(b: &BlaschkeProduct) -> ModelBasis {
    ModelBasis { zeros: b.expanded_zeros() }
}

impl ModelBasis {
    pub fn dim(&self) -> usize {
        self.zeros.len()
    }

    /// The eigenvalues of the compressed shift in basis order.
    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn eval(&self, k: usize, z: Complex64) -> Complex64 {
        let lambda = self.zeros[k];
        let prefix = self.zeros[..k].iter().fold(C1, |acc, &l| acc * factor(l, z));
        prefix * (1.0 - lambda.norm_sqr()).sqrt() / (C1 - lambda.conj() * z)
    }

    /// Basis vector values at `z`.
    pub fn eval_all(&self, z: Complex64) -> Vec<Complex64> {
        let mut prefix = C1;
        let mut out = Vec::with_capacity(self.dim());
        for &l in &self.zeros {
            out.push(prefix * (1.0 - l.norm_sqr()).sqrt() / (C1 - l.conj() * z));
            prefix *= factor(l, z);
        }
        out
    }

    /// First `len` Taylor coefficients of each basis vector.
    pub fn vector_coeffs(&self, len: usize) -> Vec<Vec<Complex64>> {
        let mut prefix = vec![C0; len];
        if len > 0 {
            prefix[0] = C1;
        }
        let mut out = Vec::with_capacity(self.dim());
        for &l in &self.zeros {
            let scale = (1.0 - l.norm_sqr()).sqrt();
            out.push(div_linear(&prefix, l.conj()).into_iter().map(|z| z * scale).collect());
            prefix = if l == C0 {
                crate::series::shift_up(&prefix, 1)
            } else {
                let u = l.norm() / l;
                let num = mul_linear(&prefix, l * u, -u);
                div_linear(&num, l.conj())
            };
        }
        out
    }
}

/// Coefficients of `a(z)·(c0 + c1 z)`, same length.
fn mul_linear(a: &[Complex64], c0: Complex64, c1: Complex64) -> Vec<Complex64> {
    (0..a.len())
        .map(|i| a[i] * c0 + if i > 0 { a[i - 1] * c1 } else { C0 })
        .collect()
}

/// Coefficients of `a(z)/(1 - w z)`, same length.
fn div_linear(a: &[Complex64], w: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len());
    let mut prev = C0;
    for &x in a {
        prev = x + w * prev;
        out.push(prev);
    }
    out
}
