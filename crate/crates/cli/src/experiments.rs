//! One runner per experiment kind. Each returns its verdicts, a JSON
//! `results` object and optional artifacts written next to the report.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use shiftlab_core::carleson::{
    blaschke_sum, build_lambda, canonical_probes, carleson_box_sup, certification_radii, nontangential_accumulation,
    CantorSet, CompactOracle, DeltaSeq, FinitePointSet,
};
use shiftlab_core::diagnostics::{
    defect_trace_profile, expansivity_defect, intertwining_residual, lemma46_theta_experiment,
    lemma61_intersection_metrics, quasiaffinity_metrics, thm69_A_matrix, Lemma46Config, Verdict,
};
use shiftlab_core::hardy_core::{toeplitz_matrix, GridFn, Symbol, TrigPoly, UnitGrid};
use shiftlab_core::inner_fn::{
    clark_inner_from_measure, clark_measure_from_blaschke, model_basis, AtomicMeasure, BlaschkeProduct,
};
use shiftlab_core::linalg::{eigenvalues, identity, max_abs, select, spectral_norm, CMatrix};
use shiftlab_core::op_lab::{
    cauchy_dual, clark_unitary, example55_pair, example_plus_clark, left_inverse, lemma36_psi, model_cyclic_vector,
    perturb_lemma32, perturb_lemma36, shift, thm69_T, thm69_X, thm69_Y, unitary_spectral_measure, Thm69Params,
    TruncOp,
};

use crate::config::*;
use crate::error::CliError;

/// A named JSON document written beside the report.
pub struct Artifact {
    pub name: String,
    pub body: Value,
}

#[derive(Default)]
pub struct Outcome {
    pub verdicts: Vec<Verdict>,
    pub results: BTreeMap<String, Value>,
    pub artifacts: Vec<Artifact>,
}

impl Outcome {
    fn put(&mut self, key: &str, v: impl serde::Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(v).expect("results serialize"));
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match &cfg.params {
        Params::Clark(p) => clark(p, &mut rng),
        Params::Frostman(p) => frostman(p, &mut rng),
        Params::CarlesonBuild(p) => carleson(p, cfg.seed),
        Params::Perturb(p) => perturb(p),
        Params::Thm69(p) => thm69(p),
        Params::Lemma46(p) => lemma46(p),
        Params::Lemma61(p) => lemma61(p, &mut rng),
        Params::DefectProfile(p) => defect_profile(p),
        Params::DualCheck(p) => dual_check(p),
    }
}

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn random_blaschke(rng: &mut ChaCha8Rng, max_degree: usize, at_origin: bool, radius: f64) -> BlaschkeProduct {
    let extra = rng.random_range(0..=max_degree.saturating_sub(at_origin as usize));
    let mut pts: Vec<Complex64> = (0..extra)
        .map(|_| Complex64::from_polar(rng.random_range(0.05..radius), rng.random_range(0.0..2.0 * PI)))
        .collect();
    if at_origin {
        pts.push(Complex64::new(0.0, 0.0));
    }
    if pts.is_empty() {
        return BlaschkeProduct::monomial(0);
    }
    BlaschkeProduct::from_points(&pts).expect("sampled zeros lie in the disc")
}

/// Atoms at least `0.05` apart in angle with normalized positive weights.
fn random_measure(rng: &mut ChaCha8Rng, max_atoms: usize) -> AtomicMeasure {
    let k = rng.random_range(1..=max_atoms.max(1));
    let mut angles: Vec<f64> = Vec::with_capacity(k);
    while angles.len() < k {
        let t = rng.random_range(0.0..2.0 * PI);
        if angles.iter().all(|&s| {
            let d = (t - s).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d) > 0.05
        }) {
            angles.push(t);
        }
    }
    let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = w.iter().sum();
    let pairs: Vec<(f64, f64)> = angles.into_iter().zip(w).map(|(t, w)| (t / PI, w / total)).collect();
    AtomicMeasure::from_angles(&pairs).expect("normalized weights")
}

fn atoms_json(nu: &AtomicMeasure) -> Vec<[f64; 2]> {
    nu.atoms().iter().map(|a| [a.angle() / PI, a.weight]).collect()
}

/// Greedy nearest matching; `∞` when the sizes differ.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("sizes match");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Distance between the Clark measure of `b` and the spectral measure of its
/// Clark unitary at the model cyclic vector.
fn spectral_mismatch(b: &BlaschkeProduct) -> Result<f64, CliError> {
    let nu = clark_measure_from_blaschke(b)?;
    let u = clark_unitary(b)?;
    let mu = unitary_spectral_measure(u.matrix(), &model_cyclic_vector(b))?;
    Ok(nu.distance(&mu))
}

fn round_trip(nu: &AtomicMeasure) -> Result<f64, CliError> {
    let inner = clark_inner_from_measure(nu)?;
    Ok(clark_measure_from_blaschke(inner.blaschke())?.distance(nu))
}

fn max_of(values: Vec<Result<f64, CliError>>) -> Result<f64, CliError> {
    values.into_iter().try_fold(0.0, |m: f64, v| v.map(|v| m.max(v)))
}

fn clark(p: &ClarkParams, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    if p.zeros.is_none() && p.atoms.is_none() && p.random_measures == 0 && p.random_blaschke == 0 {
        return Err(CliError::Validation("clark needs zeros, atoms or a random suite".into()));
    }
    let mut out = Outcome::default();
    if let Some(zeros) = &p.zeros {
        let b = blaschke(zeros, "zeros")?;
        let nu = clark_measure_from_blaschke(&b)?;
        out.put("atoms", atoms_json(&nu));
        let d = b.degree();
        out.verdicts.push(Verdict::at_most("clark_spectral_match", spectral_mismatch(&b)?, p.tol, d, vec![d]));
        out.verdicts.push(Verdict::at_most("clark_round_trip", round_trip(&nu)?, p.tol, d, vec![d]));
    }
    if let Some(atoms) = &p.atoms {
        let pairs: Vec<(f64, f64)> = atoms.iter().map(|a| (a[0], a[1])).collect();
        let nu = AtomicMeasure::from_angles(&pairs)?;
        let inner = clark_inner_from_measure(&nu)?;
        out.put("inner", inner.blaschke());
        let k = nu.atoms().len();
        out.verdicts.push(Verdict::at_most("clark_measure_round_trip", round_trip(&nu)?, p.tol, k, vec![k]));
    }
    if p.random_measures > 0 {
        let cases: Vec<AtomicMeasure> = (0..p.random_measures).map(|_| random_measure(rng, p.max_atoms)).collect();
        let worst = max_of(cases.par_iter().map(round_trip).collect())?;
        out.verdicts.push(
            Verdict::at_most("clark_random_round_trip", worst, p.tol, p.max_atoms, vec![p.random_measures])
                .with_param("max_atoms", p.max_atoms),
        );
    }
    if p.random_blaschke > 0 {
        let cases: Vec<BlaschkeProduct> =
            (0..p.random_blaschke).map(|_| random_blaschke(rng, p.max_degree, true, 0.85)).collect();
        let worst = max_of(cases.par_iter().map(spectral_mismatch).collect())?;
        out.verdicts.push(
            Verdict::at_most("clark_random_spectral_match", worst, p.tol, p.max_degree, vec![p.random_blaschke])
                .with_param("max_degree", p.max_degree),
        );
    }
    Ok(out)
}

/// `(sup |θ - θ_a| - bound, |closed form - Blaschke route|)` on the grid.
fn frostman_case(b: &BlaschkeProduct, a: Complex64, grid: usize) -> Result<(f64, f64, f64), CliError> {
    let g = UnitGrid::new(grid)?;
    let ba = b.frostman(a)?;
    let closed = shiftlab_core::inner_fn::frostman_shift(|z| b.eval(z), a)?;
    let (mut sup, mut routes): (f64, f64) = (0.0, 0.0);
    for z in g.points() {
        let v = ba.eval(z);
        sup = sup.max((b.eval(z) - v).norm());
        routes = routes.max((closed(z) - v).norm());
    }
    Ok((sup, shiftlab_core::inner_fn::frostman_bound(a), routes))
}

fn frostman(p: &FrostmanParams, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    let mut ran = false;
    if let (Some(zeros), Some(a)) = (&p.zeros, p.a) {
        ran = true;
        let b = blaschke(zeros, "zeros")?;
        let (sup, bound, routes) = frostman_case(&b, complex(a), p.grid)?;
        out.put("sup", sup);
        out.put("bound", bound);
        out.verdicts.push(Verdict::at_most("frostman_bound", sup, bound + p.tol, b.degree(), vec![p.grid]));
        out.verdicts.push(Verdict::at_most("frostman_routes_agree", routes, p.tol, b.degree(), vec![p.grid]));
    } else if p.zeros.is_some() || p.a.is_some() {
        return Err(CliError::Validation("frostman needs both zeros and a".into()));
    }
    if p.random_cases > 0 {
        ran = true;
        if !(p.max_a > 0.0 && p.max_a < 1.0) {
            return Err(CliError::Validation(format!("max_a = {} must lie in (0, 1)", p.max_a)));
        }
        let cases: Vec<(BlaschkeProduct, Complex64)> = (0..p.random_cases)
            .map(|_| {
                let b = random_blaschke(rng, p.max_degree.max(1), false, 0.9);
                let b = if b.degree() == 0 { BlaschkeProduct::monomial(1) } else { b };
                let a = Complex64::from_polar(rng.random_range(0.0..p.max_a), rng.random_range(0.0..2.0 * PI));
                (b, a)
            })
            .collect();
        let res: Vec<Result<(f64, f64, f64), CliError>> =
            cases.par_iter().map(|(b, a)| frostman_case(b, *a, p.grid)).collect();
        let (mut excess, mut routes) = (f64::NEG_INFINITY, 0.0f64);
        for r in res {
            let (sup, bound, rt) = r?;
            excess = excess.max(sup - bound);
            routes = routes.max(rt);
        }
        out.put("max_excess_over_bound", excess);
        out.verdicts.push(
            Verdict::at_most("frostman_random_bound", excess, p.tol, p.max_degree, vec![p.grid, p.random_cases])
                .with_param("max_a", p.max_a),
        );
        out.verdicts.push(Verdict::at_most("frostman_random_routes_agree", routes, p.tol, p.max_degree, vec![
            p.grid,
            p.random_cases,
        ]));
    }
    if !ran {
        return Err(CliError::Validation("frostman needs zeros and a, or random_cases".into()));
    }
    Ok(out)
}

fn carleson(p: &CarlesonParams, seed: u64) -> Result<Outcome, CliError> {
    if p.compacts.is_empty() {
        return Err(CliError::Validation("compacts is empty".into()));
    }
    let mut owned: Vec<Box<dyn CompactOracle>> = Vec::with_capacity(p.compacts.len());
    for c in &p.compacts {
        owned.push(match c {
            CompactSpec::Cantor { middle, start, span } => Box::new(CantorSet::new(*middle, start * PI, span * PI)?),
            CompactSpec::Points { angles } => {
                Box::new(FinitePointSet::new(angles.iter().map(|a| a * PI).collect())?)
            }
        });
    }
    let refs: Vec<&dyn CompactOracle> = owned.iter().map(|b| b.as_ref()).collect();
    let delta = DeltaSeq::new(p.delta.scale, p.delta.ratio)?;
    let build = build_lambda(&refs, delta, p.depth)?;
    let zeros = &build.zeros;
    let count = zeros.points().len();
    let sum = blaschke_sum(zeros);
    let boxed = carleson_box_sup(zeros, &canonical_probes());
    let radii = certification_radii(&build.audit);
    let s = p.s * PI;
    let last = refs[refs.len() - 1];
    let samples = last.sample(p.samples, seed);
    let hits = samples.par_iter().filter(|&&a| nontangential_accumulation(zeros, a, s, &radii)).count();

    let mut out = Outcome::default();
    let dims = vec![p.depth, count];
    out.verdicts.push(Verdict::at_most("blaschke_sum", sum, delta.total(), count, dims.clone()));
    out.verdicts.push(Verdict::at_most("carleson_box_sup", boxed, p.box_bound, count, dims.clone()));
    out.verdicts.push(Verdict::at_least("generation_monotone", build.monotone() as u8 as f64, 1.0, count, dims.clone()));
    out.verdicts.push(
        Verdict::at_least("nontangential_accumulation", hits as f64, samples.len() as f64, count, dims)
            .with_param("s_over_pi", p.s),
    );
    out.put("zero_count", count);
    out.put("compacts", refs.iter().map(|k| k.name()).collect::<Vec<_>>());
    out.put("certification_radii", &radii);
    out.artifacts.push(Artifact { name: "zeros".into(), body: serde_json::to_value(zeros).expect("zeros serialize") });
    out.artifacts.push(Artifact { name: "audit".into(), body: serde_json::to_value(&build.audit).expect("audit serialize") });
    Ok(out)
}

fn trig_list(f: &[Vec<Vec<Pair>>]) -> Vec<Vec<TrigPoly>> {
    f.iter().map(|row| row.iter().map(|c| TrigPoly::analytic(poly_coeffs(c))).collect()).collect()
}

fn check_f(f: &[Vec<Vec<Pair>>]) -> Result<(), CliError> {
    let n = f.len();
    if n == 0 || f.iter().any(|row| row.len() != n) {
        return Err(CliError::Validation(format!("f must be a square list of {n} rows of {n} polynomials")));
    }
    Ok(())
}

/// Toeplitz matrix of `g/ḡ`; every column is exact because both operators it
/// meets read only coefficients inside the truncation.
fn lemma32_intertwiner(g: &TrigPoly, n: usize, grid: usize) -> Result<TruncOp, CliError> {
    let sym = GridFn::from_fn(UnitGrid::new(grid)?, |z| {
        let v = g.eval(z);
        v / v.conj()
    });
    Ok(toeplitz_matrix(&Symbol::from_grid(sym), n)?.with_band(n))
}

fn perturb(p: &PerturbParams) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    let n = p.n;
    match p.family {
        PerturbFamily::Lemma32 => {
            let g = TrigPoly::analytic(poly_coeffs(&p.g));
            if (g.coeff(0) - C1).norm() > 1e-12 {
                return Err(CliError::Validation("g must satisfy g(0) = 1".into()));
            }
            let t = perturb_lemma32(&g, n)?;
            let x = lemma32_intertwiner(&g, n, p.grid)?;
            out.verdicts.push(
                intertwining_residual(&x, &shift(n, 1)?, &t)?.with_param("route", "toeplitz(g/conj g)"),
            );
            let e = expansivity_defect(&t);
            out.put("expansivity_defect", e.value);
            out.put("operator", &t);
        }
        PerturbFamily::Lemma36 => {
            check_f(&p.f)?;
            let f = trig_list(&p.f);
            let t = perturb_lemma36(&f, n)?;
            let psi = lemma36_psi(&f);
            let err = (psi.coeff(0) - C1).norm();
            out.verdicts.push(Verdict::at_most("lemma36_psi_at_origin", err, 1e-14, t.trust_band(), vec![n, f.len()]));
            out.put("psi", psi.coeffs().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
            out.put("expansivity_defect", expansivity_defect(&t).value);
            out.put("operator", &t);
        }
        PerturbFamily::PlusClark => {
            let b = blaschke(&p.zeros, "zeros")?;
            let t = example_plus_clark(&b, n)?;
            // compress to K_B in the orthonormal model basis and compare the
            // spectrum with the Clark atoms
            let basis = model_basis(&b).vector_coeffs(n);
            let d = basis.len();
            let v = CMatrix::from_fn(n, d, |r, k| basis[k][r]);
            let comp = v.adjoint() * t.matrix() * &v;
            let eig = eigenvalues(&comp).ok_or_else(|| CliError::Numerical("eigenvalues did not converge".into()))?;
            let atoms: Vec<Complex64> = clark_measure_from_blaschke(&b)?.atoms().iter().map(|a| a.point).collect();
            out.verdicts.push(Verdict::at_most("plus_clark_spectrum", multiset_distance(&eig, &atoms), 1e-9, d, vec![n, d]));
            let orth = max_abs(&(v.adjoint() * &v - identity(d)));
            out.verdicts.push(Verdict::at_most("model_basis_orthonormal", orth, 1e-10, d, vec![n, d]));
            out.put("expansivity_defect", expansivity_defect(&t).value);
        }
    }
    Ok(out)
}

fn thm69_params(a: Pair, b: Pair, theta: &[ZeroSpec], beta: &[ZeroSpec]) -> Result<Thm69Params, CliError> {
    Ok(Thm69Params::new(complex(a), complex(b), blaschke(theta, "theta")?, blaschke(beta, "beta")?)?)
}

fn thm69(p: &Thm69Config) -> Result<Outcome, CliError> {
    let params = thm69_params(p.a, p.b, &p.theta, &p.beta)?;
    let n = p.n;
    let (t, x, y, s) = (thm69_T(&params, n)?, thm69_X(&params, n)?, thm69_Y(&params, n)?, shift(n, 1)?);
    let (a, b) = (complex(p.a), complex(p.b));
    let criterion = 2.0 * (a.conj() * b).re <= -1.0;
    let mut out = Outcome::default();
    let e = expansivity_defect(&t);
    let expansive = e.pass;
    out.verdicts.push(e);
    match thm69_A_matrix(a, b, &params.beta) {
        Ok((m, v)) => {
            out.put("A", (0..2).map(|r| (0..2).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect::<Vec<_>>()).collect::<Vec<_>>());
            out.verdicts.push(v);
        }
        Err(shiftlab_core::diagnostics::DiagError::Precondition(msg)) => out.put("A", msg),
        Err(e) => return Err(e.into()),
    }
    let agree = (expansive == criterion) as u8 as f64;
    out.verdicts.push(
        Verdict::at_least("criterion_agreement", agree, 1.0, t.trust_band(), vec![n])
            .with_param("criterion", criterion)
            .with_param("expansive", expansive),
    );
    out.verdicts.push(intertwining_residual(&x, &t, &s)?.with_param("identity", "XT = SX"));
    out.verdicts.push(intertwining_residual(&y, &s, &t)?.with_param("identity", "YS = TY"));
    let q = quasiaffinity_metrics(&y);
    out.verdicts.push(Verdict::at_least("y_sigma_min", q.sigma_min_band, 1e-8, q.band, vec![n]));
    out.put("two_re_conj_a_b", 2.0 * (a.conj() * b).re);
    out.put("degree", params.degree());
    Ok(out)
}

fn lemma46(p: &Lemma46Params) -> Result<Outcome, CliError> {
    let theta = blaschke(&p.theta, "theta")?;
    let mut cfg = Lemma46Config::new(theta, complex(p.a), p.eps, p.blocks, p.n);
    cfg.delta0 = p.delta0;
    cfg.grid = p.grid;
    let rep = lemma46_theta_experiment(&cfg)?;
    let mut out = Outcome::default();
    out.put("det_error", rep.det_error);
    out.put("det_closed_form_error", rep.det_closed_form_error);
    out.put("norm_z", rep.norm_z);
    out.put("precondition_sigma", rep.precondition_sigma);
    out.put("columns", &rep.columns);
    out.put("interior_rank", rep.interior_rank);
    out.put("column_span_rank", rep.column_span_rank);
    out.put("degenerate", rep.degenerate);
    out.verdicts = rep.verdicts;
    Ok(out)
}

fn lemma61_case(theta: &BlaschkeProduct, beta: &BlaschkeProduct) -> (Vec<Verdict>, Value) {
    let r = lemma61_intersection_metrics(theta, beta);
    let mut verdicts = r.verdicts.clone();
    let len = verdicts.first().map_or(0, |v| v.band);
    verdicts.push(Verdict::at_least("lemma61_density_flag", r.density_impossible as u8 as f64, 1.0, len, vec![
        r.dim_theta,
        r.dim_beta,
    ]));
    let summary = json!({
        "dim_theta": r.dim_theta,
        "dim_beta": r.dim_beta,
        "dim_product": r.dim_product,
        "intersection_dim": r.intersection_dim,
        "density_impossible": r.density_impossible,
        "notes": r.notes,
    });
    (verdicts, summary)
}

fn lemma61(p: &Lemma61Params, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let mut cases = Vec::new();
    match (&p.theta, &p.beta) {
        (Some(t), Some(b)) => cases.push((blaschke(t, "theta")?, blaschke(b, "beta")?)),
        (None, None) => {}
        _ => return Err(CliError::Validation("lemma61 needs both theta and beta".into())),
    }
    for _ in 0..p.random_pairs {
        let t = random_blaschke(rng, p.max_degree.max(1), false, 0.85);
        let b = random_blaschke(rng, p.max_degree.max(1), false, 0.85);
        let t = if t.degree() == 0 { BlaschkeProduct::monomial(1) } else { t };
        let b = if b.degree() == 0 { BlaschkeProduct::monomial(1) } else { b };
        cases.push((t, b));
    }
    if cases.is_empty() {
        return Err(CliError::Validation("lemma61 needs theta and beta, or random_pairs".into()));
    }
    let runs: Vec<(Vec<Verdict>, Value)> = cases.par_iter().map(|(t, b)| lemma61_case(t, b)).collect();
    let single = runs.len() == 1;
    let mut out = Outcome::default();
    let mut summaries = Vec::with_capacity(runs.len());
    for (i, (verdicts, summary)) in runs.into_iter().enumerate() {
        for mut v in verdicts {
            if !single {
                v.name = format!("{}#{i}", v.name);
            }
            out.verdicts.push(v);
        }
        summaries.push(summary);
    }
    out.put("cases", summaries);
    Ok(out)
}

fn defect_profile(p: &DefectProfileParams) -> Result<Outcome, CliError> {
    if p.dims.len() < 2 || p.dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Validation("dims must be increasing with at least two entries".into()));
    }
    let (profile, v) = match p.family {
        ProfileFamily::Shift => defect_trace_profile(|n| Ok::<_, CliError>(shift(n, 1)?), &p.dims, p.tol)?,
        ProfileFamily::Lemma32 => {
            let g = TrigPoly::analytic(poly_coeffs(&p.g));
            defect_trace_profile(|n| Ok::<_, CliError>(perturb_lemma32(&g, n)?), &p.dims, p.tol)?
        }
        ProfileFamily::Lemma36 => {
            check_f(&p.f)?;
            let f = trig_list(&p.f);
            defect_trace_profile(|n| Ok::<_, CliError>(perturb_lemma36(&f, n)?), &p.dims, p.tol)?
        }
        ProfileFamily::Thm69 => {
            let params = thm69_params(p.a, p.b, &p.theta, &p.beta)?;
            defect_trace_profile(|n| Ok::<_, CliError>(thm69_T(&params, n)?), &p.dims, p.tol)?
        }
    };
    let mut out = Outcome::default();
    out.put("profile", profile);
    out.verdicts.push(v.with_param("family", p.family));
    Ok(out)
}

fn dual_family(f: DualFamily, n: usize) -> Result<Vec<TruncOp>, CliError> {
    let c = Complex64::new;
    Ok(match f {
        DualFamily::Shift => vec![shift(n, 1)?],
        DualFamily::ShiftPair => vec![shift(n, 2)?],
        DualFamily::ScaledShift => {
            let s = shift(n, 1)?;
            vec![TruncOp::new("2S", n, 1, n - 1, s.matrix() * c(2.0, 0.0))?]
        }
        DualFamily::Lemma32 => vec![perturb_lemma32(&TrigPoly::analytic(vec![c(1.0, 0.0), c(0.5, 0.0)]), n)?],
        DualFamily::Lemma36 => vec![perturb_lemma36(
            &[
                vec![TrigPoly::analytic(vec![c(0.2, 0.0), c(0.1, 0.1)]), TrigPoly::analytic(vec![c(0.0, 0.1)])],
                vec![TrigPoly::analytic(vec![c(-0.1, 0.0), c(0.0, 0.05), c(0.1, 0.0)]), TrigPoly::zero()],
            ],
            n,
        )?],
        DualFamily::PlusClark => vec![example_plus_clark(&BlaschkeProduct::monomial(2), n)?],
        DualFamily::Thm69 => {
            let chi = BlaschkeProduct::monomial(1);
            let half = BlaschkeProduct::from_points(&[c(0.5, 0.0)])?;
            vec![
                thm69_T(&Thm69Params::new(c(1.0, 0.0), c(-1.0, 0.0), chi.clone(), chi.clone())?, n)?,
                thm69_T(&Thm69Params::new(c(0.8, 0.3), c(-0.9, 0.4), BlaschkeProduct::monomial(2), half.clone())?, n)?,
                thm69_T(&Thm69Params::new(c(1.0, 0.0), c(1.0, 0.0), chi, half)?, n)?,
            ]
        }
        DualFamily::Example55 => {
            let ex = example55_pair(&TrigPoly::analytic(vec![c(1.0, 0.0), c(1.0, 0.0)]), 2.0, n)?;
            vec![ex.t, ex.t_prime]
        }
    })
}

fn dual_laws(t: &TruncOp, i: usize) -> Result<Vec<Verdict>, CliError> {
    let idx = t.band_indices();
    let band = t.trust_band();
    let dims = vec![t.dim(), t.copies()];
    let l = left_inverse(t)?;
    let lt = select(&(l.matrix() * t.matrix()), &idx, &idx);
    let left = max_abs(&(lt - identity(idx.len())));
    let d = cauchy_dual(t)?;
    let dd = cauchy_dual(&d)?;
    let double = max_abs(&(dd.band_block() - t.band_block()));
    let label = format!("{}#{i}", t.tag());
    let mut out = vec![
        Verdict::at_most(&format!("left_inverse:{label}"), left, 1e-9, band, dims.clone()),
        Verdict::at_most(&format!("double_dual:{label}"), double, 1e-8, band, dims.clone()),
    ];
    if expansivity_defect(t).pass {
        let norm = spectral_norm(&d.band_block());
        out.push(Verdict::at_most(&format!("dual_contraction:{label}"), norm, 1.0 + 1e-8, band, dims));
    }
    Ok(out)
}

fn dual_check(p: &DualCheckParams) -> Result<Outcome, CliError> {
    if p.families.is_empty() {
        return Err(CliError::Validation("families is empty".into()));
    }
    let mut families = p.families.clone();
    families.sort();
    families.dedup();
    let mut ops = Vec::new();
    for f in &families {
        ops.extend(dual_family(*f, p.n)?);
    }
    let runs: Vec<Result<Vec<Verdict>, CliError>> = ops.par_iter().enumerate().map(|(i, t)| dual_laws(t, i)).collect();
    let mut out = Outcome::default();
    for r in runs {
        out.verdicts.extend(r?);
    }
    out.put("operators", ops.len());
    Ok(out)
}
