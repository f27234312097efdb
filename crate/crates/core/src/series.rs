//! Prefix arithmetic on Taylor coefficient sequences of analytic functions.
//!
//! A sequence of length `L` holds the first `L` Taylor coefficients. Products
//! and quotients computed here are exact on the prefix they return.

use num_complex::Complex64;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// First `len` coefficients of the product `a·b`.
pub fn mul(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![C0; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == C0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// First `len` coefficients of `num/den`; `den[0]` must be nonzero.
pub fn div(num: &[Complex64], den: &[Complex64], len: usize) -> Vec<Complex64> {
    let d0 = den[0];
    let mut out = vec![C0; len];
    for k in 0..len {
        let mut acc = num.get(k).copied().unwrap_or(C0);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc -= den[j] * out[k - j];
        }
        out[k] = acc / d0;
    }
    out
}

/// `H²` inner product `Σ a_j conj(b_j)` over the common prefix.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Norm of the coefficients with index at least `from`.
pub fn tail_norm(a: &[Complex64], from: usize) -> f64 {
    a.iter().skip(from).map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or(C0) + b.get(i).copied().unwrap_or(C0))
        .collect()
}

pub fn sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or(C0) - b.get(i).copied().unwrap_or(C0))
        .collect()
}

pub fn scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    a.iter().map(|z| z * s).collect()
}

/// `a` resized to `len`, zero padded.
pub fn fit(a: &[Complex64], len: usize) -> Vec<Complex64> {
    (0..len).map(|i| a.get(i).copied().unwrap_or(C0)).collect()
}

/// The monomial `z^k` as a sequence of length `len`.
pub fn monomial(k: usize, len: usize) -> Vec<Complex64> {
    let mut v = vec![C0; len];
    if k < len {
        v[k] = Complex64::new(1.0, 0.0);
    }
    v
}

/// Multiplication by `z^k`, truncated to the input length.
pub fn shift_up(a: &[Complex64], k: usize) -> Vec<Complex64> {
    let len = a.len();
    (0..len).map(|i| if i >= k { a[i - k] } else { C0 }).collect()
}

/// Backward shift `(f - f(0))/z`.
pub fn backward_shift(a: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut v: Vec<Complex64> = a[1..].to_vec();
    v.push(C0);
    v
}

/// Co-analytic Toeplitz action `P₊(conj(ψ)·x)` for analytic `ψ`.
///
/// Exact when `x` is a polynomial whose full coefficient list is given.
pub fn coanalytic_apply(psi: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
    let len = x.len();
    let mut out = vec![C0; len];
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = C0;
        for m in j..len {
            if let Some(p) = psi.get(m - j) {
                acc += p.conj() * x[m];
            }
        }
        *o = acc;
    }
    out
}

/// Evaluates the truncated series at `z`.
pub fn eval(a: &[Complex64], z: Complex64) -> Complex64 {
    a.iter().rev().fold(C0, |acc, &c| acc * z + c)
}
