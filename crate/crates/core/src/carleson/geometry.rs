use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{CarlesonError, ZeroSet};

/// Closed arc `{ζ e^{it} : |t| ≤ half_length}` with center given by its angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub center: f64,
    pub half_length: f64,
}

impl Arc {
    pub fn new(center: f64, half_length: f64) -> Self {
        Self { center: center.rem_euclid(2.0 * PI), half_length }
    }

    /// Normalized Lebesgue measure `m(Δ)`.
    pub fn measure(&self) -> f64 {
        self.half_length / PI
    }

    /// Membership with slack for the rounding of angles near `2π`.
    pub fn contains_angle(&self, angle: f64) -> bool {
        angle_distance(angle, self.center) <= self.half_length * (1.0 + 1e-12) + 8.0 * f64::EPSILON * PI
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Signed angle difference `a - b` in `(-π, π]`.
pub(crate) fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    if d > PI {
        d - 2.0 * PI
    } else {
        d
    }
}

/// Whether `z` lies in the closed Stolz sector with vertex `ζ`, half-angle
/// `s`, symmetric about the radius through `ζ`.
pub fn stolz_membership(zeta: Complex64, s: f64, z: Complex64) -> bool {
    let w = Complex64::new(1.0, 0.0) - z * zeta.conj() / zeta.norm();
    in_sector(w, s)
}

/// Stolz membership for `z = (1-depth)·e^{i·angle}` relative to the vertex
/// `e^{i·vertex}`, computed without forming `1 - depth`.
pub fn stolz_membership_polar(vertex: f64, s: f64, angle: f64, depth: f64) -> bool {
    in_sector(relative_offset(vertex, angle, depth), s)
}

/// `1 - z·conj(ζ)` for `z = (1-depth)e^{i·angle}`, `ζ = e^{i·vertex}`.
fn relative_offset(vertex: f64, angle: f64, depth: f64) -> Complex64 {
    let phi = angle_diff(angle, vertex);
    let half = (0.5 * phi).sin();
    Complex64::new(2.0 * half * half + depth * phi.cos(), -(1.0 - depth) * phi.sin())
}

fn in_sector(w: Complex64, s: f64) -> bool {
    if w.norm() == 0.0 {
        return true;
    }
    w.arg().abs() <= s
}

/// Smallest `t > 0` with `tan s = r sin t/(1 - r cos t)`.
pub fn t_of_s_r(s: f64, r: f64) -> Result<f64, CarlesonError> {
    if !(s > 0.0 && s < PI / 2.0) || !(r > 0.0 && r < 1.0) {
        return Err(CarlesonError::InvalidParameter(format!("t(s, r) needs 0 < s < π/2 and 0 < r < 1, got s = {s}, r = {r}")));
    }
    let target = s.sin() / r;
    if target > 1.0 {
        return Err(CarlesonError::NoSolution { s, r });
    }
    // r sin t + tan s·r cos t = tan s  ⇔  sin(t + s) = sin s / r
    let mut t = target.asin() - s;
    let f = |t: f64| r * t.sin() / (1.0 - r * t.cos()) - s.tan();
    let df = |t: f64| r * (t.cos() - r) / (1.0 - r * t.cos()).powi(2);
    for _ in 0..4 {
        let d = df(t);
        if d == 0.0 {
            break;
        }
        let next = t - f(t) / d;
        if next > 0.0 && f(next).abs() < f(t).abs() {
            t = next;
        } else {
            break;
        }
    }
    Ok(t)
}

/// Half-angle `s(ε)` with `tan s = (1-ε) sin ε/(1 - (1-ε) cos ε)`.
pub fn s_of_epsilon(eps: f64) -> Result<f64, CarlesonError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(CarlesonError::InvalidParameter(format!("s(ε) needs 0 < ε < 1, got {eps}")));
    }
    let half = (0.5 * eps).sin();
    let den = 2.0 * half * half + eps * eps.cos();
    Ok(((1.0 - eps) * eps.sin() / den).atan())
}

/// `Σ (1 - |λ|)`.
pub fn blaschke_sum(zeros: &ZeroSet) -> f64 {
    zeros.points().iter().map(|p| p.depth).sum()
}

/// A Carleson box `Q(ζ, s)`: `1 - s ≤ |z| < 1`, `arg z` within `s` of `arg ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxProbe {
    pub center: f64,
    pub size: f64,
}

/// 64 equispaced centers times the 16 sizes `2^{-j}`, `j = 1..16`.
pub fn canonical_probes() -> Vec<BoxProbe> {
    let mut out = Vec::with_capacity(64 * 16);
    for c in 0..64 {
        for j in 1..=16 {
            out.push(BoxProbe { center: 2.0 * PI * c as f64 / 64.0, size: 0.5f64.powi(j) });
        }
    }
    out
}

/// `max (1/s) Σ_{λ ∈ Q(ζ,s)} (1 - |λ|)` over the probes.
pub fn carleson_box_sup(zeros: &ZeroSet, probes: &[BoxProbe]) -> f64 {
    probes
        .par_iter()
        .map(|p| {
            let mass: f64 = zeros
                .points()
                .iter()
                .filter(|z| z.depth <= p.size && angle_distance(z.angle, p.center) <= p.size)
                .map(|z| z.depth)
                .sum();
            mass / p.size
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(0.0, f64::max)
}

/// True iff for every radius there is a zero inside the Stolz sector at
/// `e^{i·vertex}` with half-angle `s` at distance below that radius.
pub fn nontangential_accumulation(zeros: &ZeroSet, vertex: f64, s: f64, radii: &[f64]) -> bool {
    let hits: Vec<f64> = zeros
        .points()
        .iter()
        .filter(|z| stolz_membership_polar(vertex, s, z.angle, z.depth))
        .map(|z| relative_offset(vertex, z.angle, z.depth).norm())
        .collect();
    radii.iter().all(|&r| hits.iter().any(|&d| d < r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stolz_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert!(stolz_membership(one, PI / 4.0, Complex64::new(0.9, 0.0)));
        assert!(!stolz_membership(one, PI / 4.0, Complex64::new(0.9, 0.2)));
        assert!(stolz_membership(one, PI / 4.0, one));
    }

    #[test]
    fn polar_membership_agrees_with_cartesian() {
        let vertex = 0.7;
        for (angle, depth) in [(0.71, 0.02), (0.75, 0.01), (0.6, 0.3), (0.7, 0.5)] {
            let z = Complex64::from_polar(1.0 - depth, angle);
            assert_eq!(
                stolz_membership(Complex64::from_polar(1.0, vertex), 1.0, z),
                stolz_membership_polar(vertex, 1.0, angle, depth)
            );
        }
    }

    #[test]
    fn epsilon_angle_tends_to_quarter_turn() {
        let s = s_of_epsilon(1e-6).unwrap();
        assert!((s - PI / 4.0).abs() < 1e-5);
        assert!(s < PI / 4.0);
    }

    #[test]
    fn angle_equation_residual() {
        let t = t_of_s_r(PI / 4.0, 0.99).unwrap();
        assert!((0.99 * t.sin() / (1.0 - 0.99 * t.cos()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angle_equation_without_solution() {
        assert!(matches!(t_of_s_r(1.5, 0.1), Err(CarlesonError::NoSolution { .. })));
    }
}
