//! The `list` output: every experiment with its parameter defaults, written
//! as a TOML document that `validate` accepts.

use serde::Serialize;

use crate::config::{ExperimentKind, Params};
use crate::report::VERSION;

/// Bumped whenever a parameter is added, renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

fn summary(kind: ExperimentKind) -> &'static str {
    match kind {
        ExperimentKind::Clark => "Clark measures of finite Blaschke products, round trips and Clark unitary spectra",
        ExperimentKind::Frostman => "grid sup of |θ - θ_a| against 2|a|/(1-|a|)",
        ExperimentKind::CarlesonBuild => "generation-wise zero set accumulating nontangentially at a compact set",
        ExperimentKind::Perturb => "finite-rank shift perturbations with their intertwiners",
        ExperimentKind::Thm69 => "the θβ perturbation: expansivity, A-matrix, criterion and intertwinings",
        ExperimentKind::Lemma46 => "the outer matrix function Θ: determinant and column lower bounds",
        ExperimentKind::Lemma61 => "K_θβ = θK_β ⊕ K_θ and the intersection with βH²",
        ExperimentKind::DefectProfile => "trace norm of I - T*T across truncation sizes",
        ExperimentKind::DualCheck => "Cauchy dual laws across the built operator families",
    }
}

/// A minimal config for `kind` with every parameter at its default.
pub fn example_config(kind: ExperimentKind) -> String {
    #[derive(Serialize)]
    struct Doc {
        experiment: &'static str,
        seed: u64,
        params: Params,
    }
    toml::to_string(&Doc { experiment: kind.name(), seed: 0, params: Params::defaults(kind) }).expect("defaults serialize")
}

pub fn render() -> String {
    let mut s = format!("# shiftlab {VERSION}, parameter schema {SCHEMA_VERSION}\n");
    s.push_str("# complex numbers are [re, im]; zeros are [re, im] or [re, im, multiplicity]; angles are in units of π\n");
    for kind in ExperimentKind::ALL {
        s.push_str(&format!("\n## {}: {}\n", kind.name(), summary(kind)));
        s.push_str(&example_config(kind));
    }
    s
}
