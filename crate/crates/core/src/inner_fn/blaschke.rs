use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::InnerError;
use crate::linalg::poly_roots;
use crate::series;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub point: Complex64,
    pub mult: u32,
}

/// `γ·Π b_λ^{m}` with `b_λ(z) = (|λ|/λ)(λ-z)/(1-conj(λ)z)` and `b_0(z) = z`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Zero>,
    phase: Complex64,
}

/// The single factor `b_λ`.
pub fn factor(lambda: Complex64, z: Complex64) -> Complex64 {
    let r = lambda.norm();
    if r == 0.0 {
        z
    } else {
        (lambda - z) / (C1 - lambda.conj() * z) * (r / lambda)
    }
}

pub fn blaschke_eval(b: &BlaschkeProduct, z: Complex64) -> Complex64 {
    b.eval(z)
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<(Complex64, u32)>) -> Result<Self, InnerError> {
        let mut merged: Vec<Zero> = Vec::new();
        for (point, mult) in zeros {
            if mult == 0 {
                return Err(InnerError::ZeroMultiplicity);
            }
            if !(point.norm() < 1.0) {
                return Err(InnerError::ZeroOutsideDisc { re: point.re, im: point.im });
            }
            match merged.iter_mut().find(|z| z.point == point) {
                Some(z) => z.mult += mult,
                None => merged.push(Zero { point, mult }),
            }
        }
        Ok(Self { zeros: merged, phase: C1 })
    }

    /// Simple zeros at the given points.
    pub fn from_points(points: &[Complex64]) -> Result<Self, InnerError> {
        Self::new(points.iter().map(|&p| (p, 1)).collect())
    }

    /// `χ^k`.
    pub fn monomial(k: u32) -> Self {
        let zeros = if k == 0 { Vec::new() } else { vec![Zero { point: C0, mult: k }] };
        Self { zeros, phase: C1 }
    }

    pub fn with_phase(mut self, phase: Complex64) -> Result<Self, InnerError> {
        if (phase.norm() - 1.0).abs() > 1e-12 {
            return Err(InnerError::PhaseNotUnimodular(phase.norm()));
        }
        self.phase = phase / phase.norm();
        Ok(self)
    }

    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|z| z.mult as usize).sum()
    }

    pub fn origin_multiplicity(&self) -> usize {
        self.zeros.iter().filter(|z| z.point == C0).map(|z| z.mult as usize).sum()
    }

    /// Zeros repeated by multiplicity, origin zeros first.
    pub fn expanded_zeros(&self) -> Vec<Complex64> {
        let mut out = vec![C0; self.origin_multiplicity()];
        for z in self.zeros.iter().filter(|z| z.point != C0) {
            out.extend(std::iter::repeat_n(z.point, z.mult as usize));
        }
        out
    }

    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|z| z.point.norm()).fold(0.0, f64::max)
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut zeros: Vec<(Complex64, u32)> = self.zeros.iter().map(|z| (z.point, z.mult)).collect();
        zeros.extend(other.zeros.iter().map(|z| (z.point, z.mult)));
        let mut out = Self::new(zeros).expect("zeros already validated");
        out.phase = self.phase * other.phase;
        out
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.phase, |acc, zero| acc * factor(zero.point, z).powu(zero.mult))
    }

    pub fn value_at_origin(&self) -> Complex64 {
        self.eval(C0)
    }

    /// `d/dt arg B(e^{it}) = Σ m(1-|λ|²)/|e^{it}-λ|²`, equal to `|B'|` on the circle.
    pub fn boundary_phase_derivative(&self, t: f64) -> f64 {
        let zeta = Complex64::from_polar(1.0, t);
        self.zeros
            .iter()
            .map(|z| z.mult as f64 * (1.0 - z.point.norm_sqr()) / (zeta - z.point).norm_sqr())
            .sum()
    }

    /// Polynomials `N`, `D` (ascending coefficients) with `B = N/D`.
    pub fn numerator_denominator(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut num = vec![self.phase];
        let mut den = vec![C1];
        for z in &self.zeros {
            for _ in 0..z.mult {
                if z.point == C0 {
                    num = poly_mul(&num, &[C0, C1]);
                } else {
                    let u = z.point.norm() / z.point;
                    num = poly_mul(&num, &[z.point * u, -u]);
                    den = poly_mul(&den, &[C1, -z.point.conj()]);
                }
            }
        }
        (num, den)
    }

    /// First `len` Taylor coefficients.
    pub fn taylor(&self, len: usize) -> Vec<Complex64> {
        let (num, den) = self.numerator_denominator();
        series::div(&num, &den, len)
    }

    /// A length beyond which the Taylor tail has norm below `tol`.
    pub fn support_len(&self, tol: f64) -> usize {
        let deg = self.degree();
        let d = self.zeros.iter().filter(|z| z.point != C0).map(|z| z.mult as usize).sum::<usize>();
        let rho = self
            .zeros
            .iter()
            .filter(|z| z.point != C0)
            .map(|z| z.point.norm())
            .fold(0.0, f64::max);
        if d == 0 {
            return deg + 1;
        }
        // |coeff_j| ≤ 2^d C(j+d-1, d-1) ρ^{j-deg}; sum the geometric tail once
        // the term ratio drops below one
        let pre = 2f64.powi(d as i32) / rho.powi(deg as i32);
        let mut term = 1.0;
        let mut j = 0usize;
        loop {
            let ratio = rho * (j + d) as f64 / (j + 1) as f64;
            if ratio < 1.0 && pre * term / (1.0 - ratio) < tol {
                return j + deg + 1;
            }
            term *= ratio;
            j += 1;
            if j > 1 << 20 {
                return j;
            }
        }
    }

    /// The Frostman shift `(θ - a)/(1 - conj(a)θ)` as a Blaschke product.
    pub fn frostman(&self, a: Complex64) -> Result<Self, InnerError> {
        if !(a.norm() < 1.0) {
            return Err(InnerError::FrostmanParameter(a.norm()));
        }
        if a == C0 {
            return Ok(self.clone());
        }
        let (num, den) = self.numerator_denominator();
        let p = poly_sub(&num, &poly_scale(&den, a));
        let roots = poly_roots(&p).ok_or_else(|| InnerError::RootFinding("frostman zeros".into()))?;
        let mut shifted = Self::new(roots.into_iter().map(|r| (r, 1)).collect())?;
        let probe = Complex64::new(1.0, 0.0);
        let t = self.eval(probe);
        let target = (t - a) / (C1 - a.conj() * t);
        let phase = target / shifted.eval(probe);
        shifted.phase = phase / phase.norm();
        Ok(shifted)
    }
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![C0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn poly_sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    series::sub(a, b)
}

pub(crate) fn poly_scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    series::scale(a, s)
}

#[derive(Serialize, Deserialize)]
struct BlaschkeRepr {
    zeros: Vec<(f64, f64, u32)>,
    #[serde(default = "unit_phase")]
    phase: (f64, f64),
}

fn unit_phase() -> (f64, f64) {
    (1.0, 0.0)
}

impl Serialize for BlaschkeProduct {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BlaschkeRepr {
            zeros: self.zeros.iter().map(|z| (z.point.re, z.point.im, z.mult)).collect(),
            phase: (self.phase.re, self.phase.im),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlaschkeProduct {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = BlaschkeRepr::deserialize(d)?;
        let zeros = repr.zeros.into_iter().map(|(re, im, m)| (Complex64::new(re, im), m)).collect();
        Self::new(zeros)
            .and_then(|b| b.with_phase(Complex64::new(repr.phase.0, repr.phase.1)))
            .map_err(serde::de::Error::custom)
    }
}
