use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Finite Fourier series `Σ_{lo ≤ k ≤ hi} c_k χ^k` on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    lo: i64,
    coeffs: Vec<Complex64>,
}

impl TrigPoly {
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        Self { lo, coeffs }
    }

    /// Analytic polynomial with coefficients starting at index 0.
    pub fn analytic(coeffs: Vec<Complex64>) -> Self {
        Self::new(0, coeffs)
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(0, vec![c])
    }

    /// `χ^k`.
    pub fn monomial(k: i64) -> Self {
        Self::new(k, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored index (`lo - 1` when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        if k < self.lo {
            return C0;
        }
        self.coeffs.get((k - self.lo) as usize).copied().unwrap_or(C0)
    }

    /// Drops leading and trailing coefficients with modulus at most `tol`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let first = self.coeffs.iter().position(|z| z.norm() > tol);
        match first {
            None => Self::zero(),
            Some(f) => {
                let last = self.coeffs.iter().rposition(|z| z.norm() > tol).unwrap_or(f);
                Self::new(self.lo + f as i64, self.coeffs[f..=last].to_vec())
            }
        }
    }

    /// True when no nonzero coefficient has negative index.
    pub fn is_analytic(&self) -> bool {
        (self.lo..0).all(|k| self.coeff(k) == C0)
    }

    /// Index of the highest nonzero coefficient, if any.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .rposition(|z| *z != C0)
            .map(|i| self.lo + i as i64)
    }

    /// Taylor coefficients `0..len` of the analytic part.
    pub fn analytic_coeffs(&self, len: usize) -> Vec<Complex64> {
        (0..len as i64).map(|k| self.coeff(k)).collect()
    }

    /// Value at `z`; negative powers use `z⁻¹`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = C0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.lo as i32)
    }

    /// Boundary conjugate: the trig polynomial equal to `conj(f)` on the circle.
    pub fn conj(&self) -> Self {
        let coeffs = self.coeffs.iter().rev().map(|z| z.conj()).collect();
        Self::new(-self.hi(), coeffs)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.lo, self.coeffs.iter().map(|z| z * s).collect())
    }

    /// Multiplication by `χ^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.lo + k, self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Self::zero();
        }
        let (lo, hi) = match (self.coeffs.is_empty(), other.coeffs.is_empty()) {
            (true, _) => (other.lo, other.hi()),
            (_, true) => (self.lo, self.hi()),
            _ => (self.lo.min(other.lo), self.hi().max(other.hi())),
        };
        let coeffs = (lo..=hi).map(|k| f(self.coeff(k), other.coeff(k))).collect();
        Self::new(lo, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![C0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.lo + other.lo, coeffs)
    }

    /// `L²(m)` norm squared (Parseval).
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `L²(m)` inner product `∫ f conj(g) dm`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        (self.lo.max(other.lo)..=self.hi().min(other.hi()))
            .map(|k| self.coeff(k) * other.coeff(k).conj())
            .sum()
    }
}

/// Riesz projection onto `H²`: keeps indices `k ≥ 0`.
pub fn riesz_plus(f: &TrigPoly) -> TrigPoly {
    if f.hi() < 0 {
        return TrigPoly::zero();
    }
    let lo = f.lo().max(0);
    TrigPoly::new(lo, (lo..=f.hi()).map(|k| f.coeff(k)).collect())
}

/// Complementary projection: keeps indices `k < 0`.
pub fn riesz_minus(f: &TrigPoly) -> TrigPoly {
    if f.lo() >= 0 {
        return TrigPoly::zero();
    }
    let hi = f.hi().min(-1);
    TrigPoly::new(f.lo(), (f.lo()..=hi).map(|k| f.coeff(k)).collect())
}
