use std::f64::consts::PI;

use super::geometry::angle_distance;
use super::{Arc, CarlesonError};

/// Largest number of arcs a single cover may contain.
pub const MAX_COVER_ARCS: usize = 1 << 22;

/// A compact subset of the circle of Lebesgue measure zero, known through
/// finite covers by disjoint closed arcs and through sample points.
pub trait CompactOracle: Send + Sync {
    fn name(&self) -> String;

    /// Disjoint closed arcs covering the set with `Σ half_length < budget`
    /// (equivalently `Σ π·m(Δ) < budget`).
    fn cover(&self, budget: f64) -> Result<Vec<Arc>, CarlesonError>;

    /// Deterministic sample of points of the set, as angles.
    fn sample(&self, count: usize, seed: u64) -> Vec<f64>;
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Finitely many points.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePointSet {
    angles: Vec<f64>,
}

impl FinitePointSet {
    pub fn new(angles: Vec<f64>) -> Result<Self, CarlesonError> {
        if angles.is_empty() {
            return Err(CarlesonError::InvalidParameter("empty point set".into()));
        }
        let angles: Vec<f64> = angles.into_iter().map(|a| a.rem_euclid(2.0 * PI)).collect();
        if min_separation(&angles) <= 0.0 {
            return Err(CarlesonError::InvalidParameter("repeated points".into()));
        }
        Ok(Self { angles })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

fn min_separation(angles: &[f64]) -> f64 {
    let mut best = PI;
    for i in 0..angles.len() {
        for j in i + 1..angles.len() {
            best = best.min(angle_distance(angles[i], angles[j]));
        }
    }
    best
}

impl CompactOracle for FinitePointSet {
    fn name(&self) -> String {
        format!("points[{}]", self.angles.len())
    }

    fn cover(&self, budget: f64) -> Result<Vec<Arc>, CarlesonError> {
        let n = self.angles.len() as f64;
        let half = (budget / (2.0 * n)).min(min_separation(&self.angles) / 3.0).min(0.5);
        Ok(self.angles.iter().map(|&a| Arc::new(a, half)).collect())
    }

    fn sample(&self, count: usize, seed: u64) -> Vec<f64> {
        let mut state = seed;
        (0..count)
            .map(|_| self.angles[(splitmix(&mut state) % self.angles.len() as u64) as usize])
            .collect()
    }
}

/// Middle-`α` Cantor set placed on the arc of angles `[start, start + span]`:
/// each interval keeps two end pieces of relative length `(1-α)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorSet {
    middle: f64,
    start: f64,
    span: f64,
}

impl CantorSet {
    pub fn new(middle: f64, start: f64, span: f64) -> Result<Self, CarlesonError> {
        if !(middle > 0.0 && middle < 1.0) {
            return Err(CarlesonError::InvalidParameter(format!("middle fraction {middle} not in (0, 1)")));
        }
        if !(span > 0.0 && span < 2.0 * PI) {
            return Err(CarlesonError::InvalidParameter(format!("span {span} not in (0, 2π)")));
        }
        Ok(Self { middle, start, span })
    }

    pub fn middle_thirds() -> Self {
        Self { middle: 1.0 / 3.0, start: -PI / 2.0, span: PI }
    }

    fn keep(&self) -> f64 {
        0.5 * (1.0 - self.middle)
    }

    /// Smallest level whose intervals have total half-length below `budget`.
    pub fn level_for(&self, budget: f64) -> usize {
        let mut level = 0;
        while 0.5 * self.span * (1.0 - self.middle).powi(level as i32) >= budget {
            level += 1;
        }
        level
    }

    /// Closed intervals of the given level, as arcs.
    pub fn level_arcs(&self, level: usize) -> Vec<Arc> {
        let r = self.keep();
        let len = r.powi(level as i32);
        (0..1usize << level)
            .map(|code| {
                let mut left = 0.0;
                let mut scale = 1.0;
                for i in 0..level {
                    if (code >> (level - 1 - i)) & 1 == 1 {
                        left += (1.0 - r) * scale;
                    }
                    scale *= r;
                }
                Arc::new(self.start + self.span * (left + 0.5 * len), 0.5 * self.span * len)
            })
            .collect()
    }
}

impl CompactOracle for CantorSet {
    fn name(&self) -> String {
        format!("cantor[middle={}]", self.middle)
    }

    fn cover(&self, budget: f64) -> Result<Vec<Arc>, CarlesonError> {
        if !(budget > 0.0) {
            return Err(CarlesonError::InvalidParameter(format!("cover budget {budget}")));
        }
        let level = self.level_for(budget);
        let needed = 2f64.powi(level as i32);
        if needed > MAX_COVER_ARCS as f64 {
            return Err(CarlesonError::CoverTooLarge { needed, limit: MAX_COVER_ARCS });
        }
        Ok(self.level_arcs(level))
    }

    fn sample(&self, count: usize, seed: u64) -> Vec<f64> {
        let r = self.keep();
        let mut state = seed;
        (0..count)
            .map(|_| {
                let bits = splitmix(&mut state);
                let mut x = 0.0;
                let mut scale = 1.0;
                for i in 0..64 {
                    if (bits >> i) & 1 == 1 {
                        x += (1.0 - r) * scale;
                    }
                    scale *= r;
                }
                (self.start + self.span * x).rem_euclid(2.0 * PI)
            })
            .collect()
    }
}
