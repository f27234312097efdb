use num_complex::Complex64;

use super::{gram_len, OpError, TruncOp};
use crate::inner_fn::{model_basis, Atom, AtomicMeasure, BlaschkeProduct, InnerError};
use crate::linalg::{schur, CMatrix, CVector};
use crate::series;

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Block-diagonal truncated shift on `H²_N`.
pub fn shift(n: usize, copies: usize) -> Result<TruncOp, OpError> {
    if n == 0 || copies == 0 {
        return Err(OpError::InvalidArgument("shift needs n ≥ 1 and N ≥ 1".into()));
    }
    let total = n * copies;
    let m = CMatrix::from_fn(total, total, |i, j| {
        if i / n == j / n && i % n == j % n + 1 {
            C1
        } else {
            Complex64::default()
        }
    });
    Ok(TruncOp::from_parts("shift", n, copies, n - 1, m))
}

/// Model-space data of `B`: orthonormal vectors and the matrix of
/// multiplication by `χ` composed with the projection.
struct ModelData {
    vectors: Vec<Vec<Complex64>>,
    taylor: Vec<Complex64>,
    compressed: CMatrix,
}

fn model_data(b: &BlaschkeProduct) -> Result<ModelData, OpError> {
    let d = b.degree();
    if d == 0 {
        return Err(OpError::InvalidArgument("constant inner function has a trivial model space".into()));
    }
    let len = gram_len(&[b], 0);
    let vectors = model_basis(b).vector_coeffs(len);
    let shifted: Vec<Vec<Complex64>> = vectors.iter().map(|v| series::shift_up(v, 1)).collect();
    let compressed = CMatrix::from_fn(d, d, |i, j| series::inner(&shifted[j], &vectors[i]));
    Ok(ModelData { vectors, taylor: b.taylor(len), compressed })
}

/// Matrix of the compressed shift `S(B) = P_{K_B} χ|_{K_B}` in the
/// orthonormal model basis (lower triangular, diagonal = zeros of `B`).
pub fn compressed_shift(b: &BlaschkeProduct) -> Result<TruncOp, OpError> {
    let data = model_data(b)?;
    let d = b.degree();
    Ok(TruncOp::from_parts("compressed_shift", d, 1, d, data.compressed))
}

/// Coordinates of `𝟏` (projected to the model space) in the model basis.
pub fn model_cyclic_vector(b: &BlaschkeProduct) -> CVector {
    let basis = model_basis(b);
    CVector::from_iterator(b.degree(), basis.eval_all(Complex64::default()).into_iter().map(|v| v.conj()))
}

/// Clark unitary `S(B) + 𝟏 ⊗ conj(χ)B` for `B(0) = 0`.
pub fn clark_unitary(b: &BlaschkeProduct) -> Result<TruncOp, OpError> {
    if b.origin_multiplicity() == 0 {
        return Err(InnerError::NonzeroAtOrigin(b.value_at_origin().norm()).into());
    }
    let data = model_data(b)?;
    let d = b.degree();
    let backward = series::backward_shift(&data.taylor);
    let one = model_cyclic_vector(b);
    let m = CMatrix::from_fn(d, d, |i, j| {
        data.compressed[(i, j)] + series::inner(&data.vectors[j], &backward) * one[i]
    });
    Ok(TruncOp::from_parts("clark_unitary", d, 1, d, m))
}

/// `(S(B)*)^{-1} = S(B) + (B - 1/conj(B(0))) ⊗ P₊(conj(χ)B)` for `B(0) ≠ 0`.
pub fn inv_adjoint_compressed_shift(b: &BlaschkeProduct) -> Result<TruncOp, OpError> {
    let b0 = b.value_at_origin();
    if b0.norm() == 0.0 {
        return Err(OpError::InvalidArgument("inverse adjoint needs B(0) ≠ 0".into()));
    }
    let data = model_data(b)?;
    let d = b.degree();
    let backward = series::backward_shift(&data.taylor);
    let mut shifted_b = data.taylor.clone();
    shifted_b[0] -= C1 / b0.conj();
    let m = CMatrix::from_fn(d, d, |i, j| {
        data.compressed[(i, j)] + series::inner(&data.vectors[j], &backward) * series::inner(&shifted_b, &data.vectors[i])
    });
    Ok(TruncOp::from_parts("inv_adjoint_compressed_shift", d, 1, d, m))
}

/// Spectral measure of a unitary matrix at a vector: atoms at the
/// eigenvalues, weights `|⟨v, e_j⟩|²` for unit eigenvectors `e_j`.
pub fn unitary_spectral_measure(u: &CMatrix, v: &CVector) -> Result<AtomicMeasure, OpError> {
    let (q, t) = schur(u).ok_or(OpError::Eigen)?;
    let atoms = (0..u.nrows())
        .map(|j| {
            let lambda = t[(j, j)];
            let weight = q.column(j).dotc(v).norm_sqr();
            Atom { point: lambda / lambda.norm(), weight }
        })
        .collect();
    Ok(AtomicMeasure::new(atoms)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compressed_shift_of_square_is_nilpotent_jordan() {
        let s = compressed_shift(&BlaschkeProduct::monomial(2)).unwrap();
        let m = s.matrix();
        assert_eq!(m[(1, 0)], C1);
        assert_eq!(m[(0, 0)], Complex64::default());
        assert_eq!(m[(0, 1)], Complex64::default());
        assert_eq!(m[(1, 1)], Complex64::default());
    }

    #[test]
    fn clark_unitary_of_square_swaps_basis() {
        let u = clark_unitary(&BlaschkeProduct::monomial(2)).unwrap();
        let m = u.matrix();
        assert!((m[(0, 1)] - C1).norm() < 1e-15 && (m[(1, 0)] - C1).norm() < 1e-15);
        assert!(m[(0, 0)].norm() < 1e-15 && m[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn inverse_adjoint_single_zero_is_two() {
        let b = BlaschkeProduct::from_points(&[Complex64::new(0.5, 0.0)]).unwrap();
        let m = inv_adjoint_compressed_shift(&b).unwrap();
        assert!((m.matrix()[(0, 0)] - Complex64::new(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn shift_truncation_layout() {
        let s = shift(3, 2).unwrap();
        assert_eq!(s.matrix()[(1, 0)], C1);
        assert_eq!(s.matrix()[(4, 3)], C1);
        assert_eq!(s.matrix()[(3, 2)], Complex64::default());
        assert_eq!(s.trust_band(), 2);
    }
}
