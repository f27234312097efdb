//! Experiment configuration: a TOML file with a fixed top level and a
//! per-experiment `[params]` table, both closed to unknown keys.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use shiftlab_core::inner_fn::BlaschkeProduct;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Clark,
    Frostman,
    CarlesonBuild,
    Perturb,
    Thm69,
    Lemma46,
    Lemma61,
    DefectProfile,
    DualCheck,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 9] = [
        ExperimentKind::Clark,
        ExperimentKind::Frostman,
        ExperimentKind::CarlesonBuild,
        ExperimentKind::Perturb,
        ExperimentKind::Thm69,
        ExperimentKind::Lemma46,
        ExperimentKind::Lemma61,
        ExperimentKind::DefectProfile,
        ExperimentKind::DualCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Clark => "clark",
            ExperimentKind::Frostman => "frostman",
            ExperimentKind::CarlesonBuild => "carleson-build",
            ExperimentKind::Perturb => "perturb",
            ExperimentKind::Thm69 => "thm69",
            ExperimentKind::Lemma46 => "lemma46",
            ExperimentKind::Lemma61 => "lemma61",
            ExperimentKind::DefectProfile => "defect-profile",
            ExperimentKind::DualCheck => "dual-check",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// A complex number written as `[re, im]`.
pub type Pair = [f64; 2];

/// A Blaschke zero written as `[re, im]` or `[re, im, multiplicity]`.
pub type ZeroSpec = Vec<f64>;

pub fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn blaschke(zeros: &[ZeroSpec], what: &str) -> Result<BlaschkeProduct, CliError> {
    let mut out = Vec::with_capacity(zeros.len());
    for z in zeros {
        let mult = match z.len() {
            2 => 1.0,
            3 => z[2],
            n => return Err(CliError::Validation(format!("{what}: zero entries need 2 or 3 numbers, got {n}"))),
        };
        if mult < 1.0 || mult.fract() != 0.0 || mult > 64.0 {
            return Err(CliError::Validation(format!("{what}: multiplicity {mult} is not a positive integer")));
        }
        out.push((Complex64::new(z[0], z[1]), mult as u32));
    }
    BlaschkeProduct::new(out).map_err(|e| CliError::Validation(format!("{what}: {e}")))
}

pub fn poly_coeffs(coeffs: &[Pair]) -> Vec<Complex64> {
    coeffs.iter().map(|&p| complex(p)).collect()
}

fn default_tol() -> f64 {
    1e-8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClarkParams {
    /// Zeros of a Blaschke product with `B(0) = 0`.
    pub zeros: Option<Vec<ZeroSpec>>,
    /// Atoms as `[angle/π, weight]`.
    pub atoms: Option<Vec<Pair>>,
    /// Number of random measures for the round-trip suite.
    pub random_measures: usize,
    pub max_atoms: usize,
    /// Number of random Blaschke products for the spectral suite.
    pub random_blaschke: usize,
    pub max_degree: usize,
    pub tol: f64,
}

impl Default for ClarkParams {
    fn default() -> Self {
        Self { zeros: None, atoms: None, random_measures: 0, max_atoms: 8, random_blaschke: 0, max_degree: 8, tol: default_tol() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FrostmanParams {
    pub zeros: Option<Vec<ZeroSpec>>,
    pub a: Option<Pair>,
    pub random_cases: usize,
    pub max_a: f64,
    pub max_degree: usize,
    pub grid: usize,
    pub tol: f64,
}

impl Default for FrostmanParams {
    fn default() -> Self {
        Self { zeros: None, a: None, random_cases: 0, max_a: 0.7, max_degree: 4, grid: 2048, tol: 1e-10 }
    }
}

/// A compact subset of the circle; angles in units of `π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CompactSpec {
    Cantor { middle: f64, start: f64, span: f64 },
    Points { angles: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaSpec {
    pub scale: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CarlesonParams {
    /// Nested compacts `K_1 ⊆ K_2 ⊆ …`; the last one is reused.
    pub compacts: Vec<CompactSpec>,
    pub delta: DeltaSpec,
    pub depth: usize,
    /// Stolz half-angle in units of `π`.
    pub s: f64,
    pub samples: usize,
    pub box_bound: f64,
}

impl Default for CarlesonParams {
    fn default() -> Self {
        Self {
            compacts: vec![CompactSpec::Cantor { middle: 0.95, start: -0.3, span: 0.6 }],
            delta: DeltaSpec { scale: 1.0, ratio: 0.25 },
            depth: 6,
            s: 0.45,
            samples: 32,
            box_bound: 4.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbFamily {
    Lemma32,
    Lemma36,
    PlusClark,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PerturbParams {
    pub family: PerturbFamily,
    /// Taylor coefficients of `g` (lemma32).
    pub g: Vec<Pair>,
    /// `f[k][j]` lists the coefficients of component `j` of `f_k` (lemma36).
    pub f: Vec<Vec<Vec<Pair>>>,
    /// Zeros of `B` with `B(0) = 0` (plus-clark).
    pub zeros: Vec<ZeroSpec>,
    pub n: usize,
    pub grid: usize,
}

impl Default for PerturbParams {
    fn default() -> Self {
        Self {
            family: PerturbFamily::Lemma32,
            g: vec![[1.0, 0.0], [0.5, 0.0]],
            f: Vec::new(),
            zeros: vec![vec![0.0, 0.0, 2.0]],
            n: 64,
            grid: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Thm69Config {
    pub a: Pair,
    pub b: Pair,
    pub theta: Vec<ZeroSpec>,
    pub beta: Vec<ZeroSpec>,
    pub n: usize,
}

impl Default for Thm69Config {
    fn default() -> Self {
        Self { a: [1.0, 0.0], b: [-1.0, 0.0], theta: vec![vec![0.0, 0.0]], beta: vec![vec![0.0, 0.0]], n: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Lemma46Params {
    pub theta: Vec<ZeroSpec>,
    pub a: Pair,
    pub eps: f64,
    pub blocks: usize,
    pub n: usize,
    pub delta0: f64,
    pub grid: usize,
}

impl Default for Lemma46Params {
    fn default() -> Self {
        Self { theta: vec![vec![0.0, 0.0, 2.0]], a: [0.05, 0.0], eps: 0.05, blocks: 2, n: 48, delta0: 1.0, grid: 512 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Lemma61Params {
    pub theta: Option<Vec<ZeroSpec>>,
    pub beta: Option<Vec<ZeroSpec>>,
    pub random_pairs: usize,
    pub max_degree: usize,
}

impl Default for Lemma61Params {
    fn default() -> Self {
        Self { theta: None, beta: None, random_pairs: 0, max_degree: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileFamily {
    Shift,
    Lemma32,
    Lemma36,
    Thm69,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DefectProfileParams {
    pub family: ProfileFamily,
    pub g: Vec<Pair>,
    pub f: Vec<Vec<Vec<Pair>>>,
    pub a: Pair,
    pub b: Pair,
    pub theta: Vec<ZeroSpec>,
    pub beta: Vec<ZeroSpec>,
    pub dims: Vec<usize>,
    pub tol: f64,
}

impl Default for DefectProfileParams {
    fn default() -> Self {
        let t = Thm69Config::default();
        Self {
            family: ProfileFamily::Lemma32,
            g: vec![[1.0, 0.0], [1.0, 0.0]],
            f: Vec::new(),
            a: t.a,
            b: t.b,
            theta: t.theta,
            beta: t.beta,
            dims: vec![16, 32, 64, 128],
            tol: default_tol(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualFamily {
    Shift,
    ShiftPair,
    ScaledShift,
    Lemma32,
    Lemma36,
    PlusClark,
    Thm69,
    Example55,
}

impl DualFamily {
    pub const ALL: [DualFamily; 8] = [
        DualFamily::Shift,
        DualFamily::ShiftPair,
        DualFamily::ScaledShift,
        DualFamily::Lemma32,
        DualFamily::Lemma36,
        DualFamily::PlusClark,
        DualFamily::Thm69,
        DualFamily::Example55,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DualCheckParams {
    pub families: Vec<DualFamily>,
    pub n: usize,
}

impl Default for DualCheckParams {
    fn default() -> Self {
        Self { families: DualFamily::ALL.to_vec(), n: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Clark(ClarkParams),
    Frostman(FrostmanParams),
    CarlesonBuild(CarlesonParams),
    Perturb(PerturbParams),
    Thm69(Thm69Config),
    Lemma46(Lemma46Params),
    Lemma61(Lemma61Params),
    DefectProfile(DefectProfileParams),
    DualCheck(DualCheckParams),
}

impl Params {
    fn parse(kind: ExperimentKind, table: toml::Table) -> Result<Self, CliError> {
        let v = toml::Value::Table(table);
        let bad = |e: toml::de::Error| CliError::Validation(format!("[params] for {}: {}", kind.name(), e.message()));
        Ok(match kind {
            ExperimentKind::Clark => Params::Clark(v.try_into().map_err(bad)?),
            ExperimentKind::Frostman => Params::Frostman(v.try_into().map_err(bad)?),
            ExperimentKind::CarlesonBuild => Params::CarlesonBuild(v.try_into().map_err(bad)?),
            ExperimentKind::Perturb => Params::Perturb(v.try_into().map_err(bad)?),
            ExperimentKind::Thm69 => Params::Thm69(v.try_into().map_err(bad)?),
            ExperimentKind::Lemma46 => Params::Lemma46(v.try_into().map_err(bad)?),
            ExperimentKind::Lemma61 => Params::Lemma61(v.try_into().map_err(bad)?),
            ExperimentKind::DefectProfile => Params::DefectProfile(v.try_into().map_err(bad)?),
            ExperimentKind::DualCheck => Params::DualCheck(v.try_into().map_err(bad)?),
        })
    }

    /// The defaults of an experiment, used by the catalog.
    pub fn defaults(kind: ExperimentKind) -> Self {
        Self::parse(kind, toml::Table::new()).expect("defaults always parse")
    }

    fn slots(&mut self) -> (Option<&mut usize>, Option<&mut usize>, Option<&mut f64>) {
        match self {
            Params::Clark(p) => (None, None, Some(&mut p.tol)),
            Params::Frostman(p) => (None, Some(&mut p.grid), Some(&mut p.tol)),
            Params::CarlesonBuild(_) => (None, None, None),
            Params::Perturb(p) => (Some(&mut p.n), Some(&mut p.grid), None),
            Params::Thm69(p) => (Some(&mut p.n), None, None),
            Params::Lemma46(p) => (Some(&mut p.n), Some(&mut p.grid), None),
            Params::Lemma61(_) => (None, None, None),
            Params::DefectProfile(p) => (None, None, Some(&mut p.tol)),
            Params::DualCheck(p) => (Some(&mut p.n), None, None),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: ExperimentKind,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    expected_fail: Vec<String>,
    #[serde(default)]
    output: OutputSpec,
    #[serde(default)]
    params: toml::Table,
}

/// Command-line overrides applied after parsing.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub dim: Option<usize>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A fully resolved configuration; serializes to what the report records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub expected_fail: Vec<String>,
    pub output: OutputSpec,
    pub params: Params,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str, ov: &Overrides) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Validation(e.message().to_string()))?;
        let mut params = Params::parse(raw.experiment, raw.params)?;
        let name = raw.experiment.name();
        let (dim, grid, tol) = params.slots();
        apply(dim, ov.dim, "--dim", name)?;
        apply(grid, ov.grid, "--grid", name)?;
        apply(tol, ov.tol, "--tol", name)?;
        let mut output = raw.output;
        if let Some(p) = &ov.out {
            output.path = Some(p.clone());
        }
        if let Some(f) = ov.format {
            output.format = f;
        }
        Ok(Self { experiment: raw.experiment, seed: ov.seed.unwrap_or(raw.seed), expected_fail: raw.expected_fail, output, params })
    }

    pub fn from_path(path: &Path, ov: &Overrides) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text, ov)
    }
}

fn apply<T: Copy>(slot: Option<&mut T>, value: Option<T>, flag: &str, name: &str) -> Result<(), CliError> {
    match (slot, value) {
        (Some(s), Some(v)) => {
            *s = v;
            Ok(())
        }
        (None, Some(_)) => Err(CliError::Validation(format!("{flag} does not apply to experiment {name}"))),
        _ => Ok(()),
    }
}
