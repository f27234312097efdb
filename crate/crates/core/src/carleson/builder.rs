use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::geometry::angle_distance;
use super::{Arc, CarlesonError, CompactOracle};

/// Number of points of `K_n` checked against the cover of `K_{n+1}`.
const NESTING_SAMPLES: usize = 32;

/// Summable positive sequence `δ_k = scale·ratio^k`, `k ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaSeq {
    pub scale: f64,
    pub ratio: f64,
}

impl DeltaSeq {
    pub fn new(scale: f64, ratio: f64) -> Result<Self, CarlesonError> {
        if !(ratio > 0.0 && ratio < 1.0) || !(scale > 0.0) || scale * ratio >= 1.0 {
            return Err(CarlesonError::InvalidParameter(format!(
                "δ_k = {scale}·{ratio}^k needs 0 < ratio < 1 and δ_1 < 1"
            )));
        }
        Ok(Self { scale, ratio })
    }

    /// `δ_k = 4^{-k}`.
    pub fn quarter_powers() -> Self {
        Self { scale: 1.0, ratio: 0.25 }
    }

    pub fn term(&self, k: usize) -> f64 {
        self.scale * self.ratio.powi(k as i32)
    }

    /// `Σ_{k ≥ m} δ_k`.
    pub fn tail(&self, m: usize) -> f64 {
        self.term(m) / (1.0 - self.ratio)
    }

    /// `Σ_{k ≥ 1} δ_k`.
    pub fn total(&self) -> f64 {
        self.tail(1)
    }

    /// Smallest `m > after` with `tail(m) < eps`.
    pub fn first_tail_below(&self, eps: f64, after: usize) -> usize {
        let guess = ((eps * (1.0 - self.ratio) / self.scale).ln() / self.ratio.ln()).floor();
        let mut m = if guess.is_finite() && guess > 0.0 { guess as usize } else { 0 };
        m = m.max(after + 1);
        while m > after + 1 && self.tail(m - 1) < eps {
            m -= 1;
        }
        while self.tail(m) >= eps {
            m += 1;
        }
        m
    }
}

/// A zero `λ = (1 - depth)·e^{i·angle}`; the depth `1 - |λ|` is stored
/// directly so deep generations keep full relative precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPoint {
    pub angle: f64,
    pub depth: f64,
    pub generation: usize,
    pub arc_index: usize,
}

impl ZeroPoint {
    pub fn point(&self) -> Complex64 {
        Complex64::from_polar(1.0 - self.depth, self.angle)
    }
}

#[derive(Serialize, Deserialize)]
struct ZeroPointRepr {
    re: f64,
    im: f64,
    depth: f64,
    generation: usize,
    arc_index: usize,
}

impl Serialize for ZeroPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let p = self.point();
        ZeroPointRepr { re: p.re, im: p.im, depth: self.depth, generation: self.generation, arc_index: self.arc_index }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZeroPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ZeroPointRepr::deserialize(d)?;
        Ok(Self { angle: r.im.atan2(r.re), depth: r.depth, generation: r.generation, arc_index: r.arc_index })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZeroSet {
    points: Vec<ZeroPoint>,
}

impl ZeroSet {
    pub fn new(points: Vec<ZeroPoint>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[ZeroPoint] {
        &self.points
    }

    pub fn generation(&self, n: usize) -> impl Iterator<Item = &ZeroPoint> {
        self.points.iter().filter(move |p| p.generation == n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationAudit {
    #[serde(rename = "N_n")]
    pub count: usize,
    pub eps_min: f64,
    pub eps_max: f64,
    pub eps_sum: f64,
    #[serde(rename = "M_n")]
    pub tail_index: usize,
    pub delta_budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildOutput {
    pub zeros: ZeroSet,
    pub audit: Vec<GenerationAudit>,
}

impl BuildOutput {
    /// `ε_{n,N_n} ≤ ε_{n,k} < ε_{n-1,N_{n-1}}` for all generations, and the
    /// last point of each generation carries the minimal depth.
    pub fn monotone(&self) -> bool {
        let mut prev_last = f64::INFINITY;
        for (i, a) in self.audit.iter().enumerate() {
            let gen: Vec<&ZeroPoint> = self.zeros.generation(i + 1).collect();
            let Some(last) = gen.last() else { return false };
            if last.depth != a.eps_min || gen.iter().any(|p| p.depth < last.depth || p.depth >= prev_last) {
                return false;
            }
            prev_last = last.depth;
        }
        true
    }
}

/// Radii `2·max_k ε_{n,k}`, one per generation, decreasing.
pub fn certification_radii(audit: &[GenerationAudit]) -> Vec<f64> {
    audit.iter().map(|a| 2.0 * a.eps_max).collect()
}

/// Generation-by-generation zero set: at step `n` the compact `K_n` is
/// covered by disjoint arcs with `Σ π·m(Δ) < δ_{M_{n-1}}` (`M_0 = 1`), each
/// arc contributes the zero `(1 - ε)·center` with `ε = π·m(Δ)`, and `M_n` is
/// the least index above `M_{n-1}` with `Σ_{k ≥ M_n} δ_k < min ε`.
///
/// `compacts[n-1]` is `K_n`; the last entry is reused for deeper levels.
pub fn build_lambda(
    compacts: &[&dyn CompactOracle],
    delta: DeltaSeq,
    depth: usize,
) -> Result<BuildOutput, CarlesonError> {
    if compacts.is_empty() {
        return Err(CarlesonError::InvalidParameter("no compact sets".into()));
    }
    let mut points = Vec::new();
    let mut audit = Vec::with_capacity(depth);
    let mut tail_index = 1;
    for n in 1..=depth {
        let k = compacts[(n - 1).min(compacts.len() - 1)];
        let budget = delta.term(tail_index);
        let mut arcs = k.cover(budget)?;
        if arcs.is_empty() {
            return Err(CarlesonError::EmptyCover { generation: n });
        }
        let sum: f64 = arcs.iter().map(|a| a.half_length).sum();
        if !(sum < budget) || arcs.iter().any(|a| !(a.half_length > 0.0 && a.half_length < 1.0)) {
            return Err(CarlesonError::CoverBudgetExceeded { generation: n, sum, budget });
        }
        if !disjoint(&arcs) {
            return Err(CarlesonError::ArcsOverlap { generation: n });
        }
        if n >= 2 {
            let prev = compacts[(n - 2).min(compacts.len() - 1)];
            let covered = prev
                .sample(NESTING_SAMPLES, n as u64)
                .into_iter()
                .all(|a| arcs.iter().any(|arc| arc.contains_angle(a)));
            if !covered {
                return Err(CarlesonError::NotNested { generation: n });
            }
        }
        // minimal ε moved to the end, ties resolved towards the last index
        let min_eps = arcs.iter().map(|a| a.half_length).fold(f64::INFINITY, f64::min);
        let pos = arcs.iter().rposition(|a| a.half_length == min_eps).expect("nonempty cover");
        let smallest = arcs.remove(pos);
        arcs.push(smallest);
        let eps_max = arcs.iter().map(|a| a.half_length).fold(0.0, f64::max);
        points.extend(arcs.iter().enumerate().map(|(i, a)| ZeroPoint {
            angle: a.center,
            depth: a.half_length,
            generation: n,
            arc_index: i,
        }));
        tail_index = delta.first_tail_below(min_eps, tail_index);
        audit.push(GenerationAudit {
            count: arcs.len(),
            eps_min: min_eps,
            eps_max,
            eps_sum: sum,
            tail_index,
            delta_budget: budget,
        });
    }
    Ok(BuildOutput { zeros: ZeroSet::new(points), audit })
}

fn disjoint(arcs: &[Arc]) -> bool {
    let mut sorted: Vec<&Arc> = arcs.iter().collect();
    sorted.sort_by(|a, b| a.center.total_cmp(&b.center));
    let n = sorted.len();
    if n < 2 {
        return true;
    }
    (0..n).all(|i| {
        let (a, b) = (sorted[i], sorted[(i + 1) % n]);
        angle_distance(a.center, b.center) > a.half_length + b.half_length
    })
}
