use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::blaschke::{poly_mul, poly_sub};
use super::{BlaschkeProduct, InnerError};
use crate::linalg::poly_roots;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Atoms closer than this in angle are considered coincident.
const ATOM_SEPARATION: f64 = 1e-12;
/// Tolerance on the total mass of a probability measure.
const MASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: Complex64,
    pub weight: f64,
}

impl Atom {
    /// Angle in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        self.point.arg().rem_euclid(2.0 * PI)
    }
}

/// Finitely supported positive measure on the circle, atoms sorted by angle.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    /// Atoms from `(angle/π, weight)` pairs.
    pub fn from_angles(pairs: &[(f64, f64)]) -> Result<Self, InnerError> {
        Self::new(
            pairs
                .iter()
                .map(|&(t, w)| Atom { point: Complex64::from_polar(1.0, t * PI), weight: w })
                .collect(),
        )
    }

    pub fn new(mut atoms: Vec<Atom>) -> Result<Self, InnerError> {
        if atoms.iter().any(|a| !(a.weight > 0.0) || !a.weight.is_finite()) {
            return Err(InnerError::InvalidWeights { sum: atoms.iter().map(|a| a.weight).sum() });
        }
        if atoms.iter().any(|a| (a.point.norm() - 1.0).abs() > 1e-12) {
            return Err(InnerError::InvalidAtoms);
        }
        atoms.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
        let n = atoms.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if n > 1 && angular_gap(atoms[i].angle(), atoms[j].angle()) < ATOM_SEPARATION {
                return Err(InnerError::InvalidAtoms);
            }
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Largest atom-wise discrepancy in position and weight (atoms matched
    /// in angular order); infinite when the atom counts differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.atoms.len() != other.atoms.len() {
            return f64::INFINITY;
        }
        self.atoms
            .iter()
            .zip(other.atoms.iter())
            .map(|(a, b)| (a.point - b.point).norm().max((a.weight - b.weight).abs()))
            .fold(0.0, f64::max)
    }
}

fn angular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

impl Serialize for AtomicMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            atoms: Vec<(f64, f64)>,
        }
        Repr { atoms: self.atoms.iter().map(|a| (a.angle() / PI, a.weight)).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AtomicMeasure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            atoms: Vec<(f64, f64)>,
        }
        let r = Repr::deserialize(d)?;
        Self::from_angles(&r.atoms).map_err(serde::de::Error::custom)
    }
}

/// Inner function with `θ(0) = 0` whose Clark measure is a given
/// probability measure: `1/(1-θ(z)) = Σ w_j/(1 - z conj(ζ_j))`.
#[derive(Debug, Clone)]
pub struct ClarkInner {
    measure: AtomicMeasure,
    blaschke: BlaschkeProduct,
}

impl ClarkInner {
    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    /// The same function as a Blaschke product.
    pub fn blaschke(&self) -> &BlaschkeProduct {
        &self.blaschke
    }

    /// Value from the Herglotz representation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let f: Complex64 = self
            .measure
            .atoms
            .iter()
            .map(|a| a.weight / (C1 - z * a.point.conj()))
            .sum();
        C1 - C1 / f
    }
}

pub fn clark_inner_from_measure(nu: &AtomicMeasure) -> Result<ClarkInner, InnerError> {
    let atoms = nu.atoms();
    if atoms.is_empty() {
        return Err(InnerError::EmptyMeasure);
    }
    let sum = nu.total_mass();
    if (sum - 1.0).abs() > MASS_TOL {
        return Err(InnerError::InvalidWeights { sum });
    }
    let measure = AtomicMeasure {
        atoms: atoms.iter().map(|a| Atom { point: a.point, weight: a.weight / sum }).collect(),
    };
    // Σ w_j/(1 - ζ̄_j z) = P/Q with Q = Π(1 - ζ̄_j z); θ = (P - Q)/P
    let mut q = vec![C1];
    for a in &measure.atoms {
        q = poly_mul(&q, &[C1, -a.point.conj()]);
    }
    let mut p = vec![C0; measure.atoms.len()];
    for (j, a) in measure.atoms.iter().enumerate() {
        let mut term = vec![Complex64::new(a.weight, 0.0)];
        for (l, b) in measure.atoms.iter().enumerate() {
            if l != j {
                term = poly_mul(&term, &[C1, -b.point.conj()]);
            }
        }
        p = crate::series::add(&p, &term);
    }
    // constant term of P - Q is Σw - 1 = 0; divide out z exactly
    let diff = poly_sub(&p, &q);
    let reduced: Vec<Complex64> = diff[1..].to_vec();
    let roots = poly_roots(&reduced).ok_or_else(|| InnerError::RootFinding("clark zeros".into()))?;
    let mut zeros = vec![(C0, 1)];
    for r in roots {
        if !(r.norm() < 1.0) {
            return Err(InnerError::RootFinding(format!("zero {r} outside the disc")));
        }
        zeros.push((r, 1));
    }
    let unit = BlaschkeProduct::new(zeros)?;
    let probe = Complex64::from_polar(1.0, widest_gap_midpoint(&measure));
    let inner = ClarkInner { measure, blaschke: unit.clone() };
    let phase = inner.eval(probe) / unit.eval(probe);
    let blaschke = unit.with_phase(phase / phase.norm())?;
    Ok(ClarkInner { blaschke, ..inner })
}

fn widest_gap_midpoint(nu: &AtomicMeasure) -> f64 {
    let angles: Vec<f64> = nu.atoms.iter().map(|a| a.angle()).collect();
    let n = angles.len();
    let mut best = (0.0, angles[0] + PI);
    for i in 0..n {
        let a = angles[i];
        let b = if i + 1 < n { angles[i + 1] } else { angles[0] + 2.0 * PI };
        if b - a > best.0 {
            best = (b - a, 0.5 * (a + b));
        }
    }
    best.1
}

/// Clark measure of `B` at the point 1: atoms at the roots of `B(ζ) = 1`,
/// weights `1/|B'(ζ)|`.
pub fn clark_measure_from_blaschke(b: &BlaschkeProduct) -> Result<AtomicMeasure, InnerError> {
    let origin = b.value_at_origin().norm();
    if b.origin_multiplicity() == 0 {
        return Err(InnerError::NonzeroAtOrigin(origin));
    }
    let d = b.degree();
    let (num, den) = b.numerator_denominator();
    let roots = poly_roots(&poly_sub(&num, &den)).ok_or_else(|| InnerError::RootFinding("B = 1".into()))?;
    let mut angles: Vec<f64> = roots.iter().map(|r| polish_angle(b, r.arg())).collect();
    angles.iter_mut().for_each(|t| *t = t.rem_euclid(2.0 * PI));
    angles.sort_by(|a, c| a.total_cmp(c));
    let distinct = angles.len() == d
        && (0..d).all(|i| d == 1 || angular_gap(angles[i], angles[(i + 1) % d]) > 1e-9);
    if !distinct {
        angles = phase_bracket_roots(b)?;
    }
    let atoms = angles
        .iter()
        .map(|&t| Atom { point: Complex64::from_polar(1.0, t), weight: 1.0 / b.boundary_phase_derivative(t) })
        .collect();
    AtomicMeasure::new(atoms)
}

/// Newton iteration on `arg B(e^{it}) = 0`.
fn polish_angle(b: &BlaschkeProduct, mut t: f64) -> f64 {
    for _ in 0..60 {
        let phase = b.eval(Complex64::from_polar(1.0, t)).arg();
        let step = phase / b.boundary_phase_derivative(t);
        t -= step;
        if step.abs() < 1e-16 {
            break;
        }
    }
    t
}

/// Fallback root search: the boundary phase is strictly increasing with
/// total increase `2π·deg B`, so each crossing of `2πℤ` is bracketed on a fine
/// grid and refined by bisection.
fn phase_bracket_roots(b: &BlaschkeProduct) -> Result<Vec<f64>, InnerError> {
    let d = b.degree();
    let steps = 64 * d.max(1) * 16;
    let mut out = Vec::with_capacity(d);
    let phase = |t: f64| b.eval(Complex64::from_polar(1.0, t)).arg();
    let mut t0 = 0.0;
    let mut p0 = phase(t0);
    if p0 == 0.0 {
        out.push(0.0);
    }
    for k in 1..=steps {
        let t1 = 2.0 * PI * k as f64 / steps as f64;
        let p1 = phase(t1);
        if p0 < 0.0 && p1 >= 0.0 && p1 - p0 < PI {
            let (mut lo, mut hi) = (t0, t1);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if phase(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(polish_angle(b, 0.5 * (lo + hi)));
        }
        t0 = t1;
        p0 = p1;
    }
    if out.len() != d {
        return Err(InnerError::RootFinding(format!("found {} of {} boundary roots", out.len(), d)));
    }
    Ok(out)
}
