//! Batch runs over scenario configs: `analyze`, `roundtrip` and `verify`,
//! each producing a [`RunReport`] of residuals, tolerances and verdicts.

use std::collections::BTreeMap;
use std::io;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{parse_configs, BuiltModel, LeftInverseKind, ScenarioConfig};
use crate::dual::verify_left_inverse;
use crate::error::{Error, Result};
use crate::frame::{diagnostics, null_direction, oracle_frame_bounds, FrameDiagnostics, DEFAULT_ORACLE_CAP};
use crate::group::{GroupSequence, GroupSpec, ProductSubgroup};
use crate::model::{FunctionOnG, TranslationModel, DEFAULT_GRAM_CAP};
use crate::sampling::{DualChoice, FiniteIndexProcedure, SamplingProcedure, SemidirectProcedure};
use crate::semidirect::SemidirectModel;
use crate::system::{SequenceMatrix, VectorSequence};

pub const ROUNDTRIP_TOL: f64 = 1e-9;
pub const RECONSTRUCTION_TOL: f64 = 1e-8;
pub const INTERPOLATION_TOL: f64 = 1e-8;
pub const FOUNDATION_TOL: f64 = 1e-10;
pub const DFT_ROUNDTRIP_TOL: f64 = 1e-12;
pub const ORACLE_TOL: f64 = 1e-8;
pub const DETERMINANT_SLACK: f64 = 1e-9;

/// Size of the perturbation added to `B` in fault mode.
pub const FAULT_SIZE: f64 = 1e-3;

/// Report directory used when no explicit report path is given.
pub const REPORT_DIR_ENV: &str = "GROUPSAMP_REPORT_DIR";

pub const BUNDLED: [(&str, &str); 5] = [
    ("identity", include_str!("../scenarios/identity.json")),
    ("shannon_z4", include_str!("../scenarios/shannon_z4.json")),
    ("finite_index_z8", include_str!("../scenarios/finite_index_z8.json")),
    ("semidirect_c2", include_str!("../scenarios/semidirect_c2.json")),
    ("nonframe_counterexample", include_str!("../scenarios/nonframe_counterexample.json")),
];

pub fn bundled_configs() -> Vec<ScenarioConfig> {
    BUNDLED
        .iter()
        .flat_map(|(_, text)| parse_configs(text).expect("bundled scenarios are valid"))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub tol: Option<f64>,
    pub left_inverse: Option<LeftInverseKind>,
    pub seed: Option<u64>,
    /// Perturbs `B` before the left-inverse check.
    pub inject_fault: bool,
    /// Adds wall-clock timings, which makes reports non-reproducible.
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `value < tolerance`
    Below,
    /// `value <= tolerance`
    AtMost,
    /// `value > tolerance`
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, value: f64, tolerance: f64, relation: Relation) -> Self {
        let pass = match relation {
            Relation::Below => value < tolerance,
            Relation::AtMost => value <= tolerance,
            Relation::Above => value > tolerance,
        };
        Self {
            name: name.into(),
            value,
            tolerance,
            relation,
            pass,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Analyze,
    Roundtrip,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: Command,
    pub scenario: String,
    pub seed: u64,
    pub left_inverse: &'static str,
    pub diagnostics: Option<FrameDiagnostics>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub command: Command,
    pub reports: Vec<RunReport>,
    pub pass: bool,
    pub exit_code: i32,
}

/// Runs one command over every scenario.
pub fn run(command: Command, configs: &[ScenarioConfig], opts: &RunOptions) -> Result<RunSummary> {
    if configs.is_empty() {
        return Err(Error::Schema("the scenario list is empty".into()));
    }
    let reports: Vec<RunReport> = configs.iter().map(|c| run_one(command, c, opts)).collect();
    let exit_code = reports.iter().map(|r| r.exit_code).max().unwrap_or(0);
    Ok(RunSummary {
        command,
        pass: exit_code == 0,
        exit_code,
        reports,
    })
}

pub fn run_one(command: Command, cfg: &ScenarioConfig, opts: &RunOptions) -> RunReport {
    let start = Instant::now();
    let seed = opts.seed.unwrap_or(cfg.seed);
    let kind = opts.left_inverse.unwrap_or(cfg.left_inverse);
    let mut report = RunReport {
        command,
        scenario: cfg.name.clone(),
        seed,
        left_inverse: kind.name(),
        diagnostics: None,
        checks: Vec::new(),
        error: None,
        pass: false,
        exit_code: 0,
        timings_ms: None,
    };
    let outcome = Prepared::new(cfg, opts, seed, kind).and_then(|prep| {
        report.diagnostics = Some(prep.diagnostics.clone());
        match command {
            Command::Analyze => Ok(prep.analyze()),
            Command::Roundtrip => prep.roundtrip(opts),
            Command::Verify => prep.verify(opts),
        }
    });
    match outcome {
        Ok(checks) => {
            report.checks = checks;
            report.pass = report.checks.iter().all(|c| c.pass);
            report.exit_code = if report.pass { 0 } else { 1 };
        }
        Err(e) => {
            report.exit_code = e.exit_code();
            report.error = Some(e.to_string());
        }
    }
    if opts.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        report.timings_ms = Some(BTreeMap::from([("total".to_string(), ms)]));
    }
    report
}

enum Pipeline {
    Plain(SamplingProcedure),
    Finite(FiniteIndexProcedure),
    Semidirect(SemidirectProcedure),
}

impl Pipeline {
    fn procedure(&self) -> &SamplingProcedure {
        match self {
            Pipeline::Plain(p) => p,
            Pipeline::Finite(p) => p.procedure(),
            Pipeline::Semidirect(p) => p.procedure(),
        }
    }
}

struct Prepared<'a> {
    cfg: &'a ScenarioConfig,
    model: BuiltModel,
    probes: Option<Vec<GroupSequence>>,
    /// `R` inside `H` and the regrouped model, for finite-index runs.
    finite: Option<(ProductSubgroup, TranslationModel)>,
    system: SequenceMatrix,
    diagnostics: FrameDiagnostics,
    tol: Option<f64>,
    kind: LeftInverseKind,
    seed: u64,
}

#[derive(Default)]
struct Residuals {
    coefficient: f64,
    function: f64,
    two_path: f64,
    consistency: Option<f64>,
    sandwich: f64,
}

impl Residuals {
    fn merge(&mut self, o: Residuals) {
        self.coefficient = self.coefficient.max(o.coefficient);
        self.function = self.function.max(o.function);
        self.two_path = self.two_path.max(o.two_path);
        self.sandwich = self.sandwich.max(o.sandwich);
        self.consistency = match (self.consistency, o.consistency) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_sequence(group: &GroupSpec, rng: &mut ChaCha8Rng) -> GroupSequence {
    GroupSequence::from_fn(group.clone(), |_| random_complex(rng))
}

/// Small integers, so sums and permutations are exact in floating point.
fn random_integer_sequence(group: &GroupSpec, rng: &mut ChaCha8Rng) -> GroupSequence {
    GroupSequence::from_fn(group.clone(), |_| {
        Complex64::new(rng.random_range(-8..=8) as f64, rng.random_range(-8..=8) as f64)
    })
}

fn random_vector(group: &GroupSpec, n: usize, rng: &mut ChaCha8Rng) -> VectorSequence {
    VectorSequence::new((0..n).map(|_| random_sequence(group, rng)).collect()).expect("n >= 1")
}

fn relative(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

fn function_error(a: &FunctionOnG, b: &FunctionOnG) -> Result<f64> {
    Ok(relative(a.max_abs_diff(b)?, b.max_abs()))
}

/// How far `energy / norm` falls outside `[alpha, beta]`, relative to `beta`.
fn sandwich_violation(diag: &FrameDiagnostics, energy: f64, norm: f64) -> f64 {
    if norm == 0.0 {
        return 0.0;
    }
    let r = energy / norm;
    let excess = (diag.alpha - r).max(r - diag.beta).max(0.0);
    relative(excess, diag.beta)
}

impl<'a> Prepared<'a> {
    fn new(cfg: &'a ScenarioConfig, opts: &RunOptions, seed: u64, kind: LeftInverseKind) -> Result<Self> {
        let model = cfg.build_model()?;
        let translation = model.translation();
        let probes = cfg.build_probes(translation.window())?;
        let finite = match cfg.r_strides()? {
            Some(r) => Some(FiniteIndexProcedure::regrouped_model(translation, r)?),
            None => None,
        };
        let sampling_model = finite.as_ref().map(|f| &f.1).unwrap_or(translation);
        let system = match (&probes, &cfg.system) {
            (Some(p), _) => sampling_model.sample_matrix(p)?,
            (None, Some(m)) => m.on(sampling_model.coefficient_group())?,
            (None, None) => unreachable!("probes default to the window"),
        };
        if system.cols() != sampling_model.generator_count() {
            return Err(Error::Schema(format!(
                "system has {} columns, the model has {} generators",
                system.cols(),
                sampling_model.generator_count()
            )));
        }
        let tol = opts.tol.or(cfg.tol);
        let diagnostics = diagnostics(&system, tol);
        Ok(Self {
            cfg,
            model,
            probes,
            finite,
            system,
            diagnostics,
            tol,
            kind,
            seed,
        })
    }

    fn sampling_model(&self) -> &TranslationModel {
        self.finite.as_ref().map(|f| &f.1).unwrap_or(self.model.translation())
    }

    fn dual_choice(&self) -> Result<DualChoice> {
        Ok(match self.kind {
            LeftInverseKind::MoorePenrose => DualChoice::MoorePenrose,
            LeftInverseKind::Square => DualChoice::Square,
            LeftInverseKind::Family => {
                let group = self.system.group();
                let (n, m) = (self.system.cols(), self.system.rows());
                let c = match &self.cfg.family_c {
                    Some(c) => {
                        let c = c.on(group)?;
                        if c.rows() != n || c.cols() != m {
                            return Err(Error::Schema(format!(
                                "family_c must be {n}x{m}, got {}x{}",
                                c.rows(),
                                c.cols()
                            )));
                        }
                        c
                    }
                    None => {
                        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed_c0de);
                        SequenceMatrix::from_fn(group.clone(), n, m, |_, _| {
                            GroupSequence::from_fn(group.clone(), |_| Complex64::new(rng.random_range(-1.0..1.0), 0.0))
                        })?
                    }
                };
                DualChoice::Family(c.transfer())
            }
        })
    }

    fn pipeline(&self) -> Result<Pipeline> {
        let choice = self.dual_choice()?;
        let tol = self.tol;
        let translation = self.model.translation();
        Ok(match (&self.model, &self.finite, &self.probes) {
            (BuiltModel::Semidirect { model, .. }, _, Some(p)) => {
                Pipeline::Semidirect(SemidirectProcedure::from_probes(model.clone(), p.clone(), &choice, tol)?)
            }
            (BuiltModel::Semidirect { model, .. }, _, None) => {
                Pipeline::Semidirect(SemidirectProcedure::new(model.clone(), self.system.clone(), &choice, tol)?)
            }
            (_, Some((coarse, _)), Some(p)) => Pipeline::Finite(FiniteIndexProcedure::from_probes(
                translation,
                coarse.strides().to_vec(),
                p.clone(),
                &choice,
                tol,
            )?),
            (_, Some((coarse, _)), None) => Pipeline::Finite(FiniteIndexProcedure::new(
                translation,
                coarse.strides().to_vec(),
                self.system.clone(),
                &choice,
                tol,
            )?),
            (_, None, Some(p)) => {
                Pipeline::Plain(SamplingProcedure::from_probes(translation.clone(), p.clone(), &choice, tol)?)
            }
            (_, None, None) => {
                Pipeline::Plain(SamplingProcedure::new(translation.clone(), self.system.clone(), &choice, tol)?)
            }
        })
    }

    fn analyze(&self) -> Vec<Check> {
        let d = &self.diagnostics;
        vec![Check::new("frame", d.delta, d.tol, Relation::Above)]
    }

    fn roundtrip(&self, opts: &RunOptions) -> Result<Vec<Check>> {
        if !self.diagnostics.is_frame {
            return Err(Error::NotAFrame {
                delta: self.diagnostics.delta,
                tol: self.diagnostics.tol,
            });
        }
        let pipeline = self.pipeline()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.pipeline_checks(&pipeline, opts, &mut rng)
    }

    fn pipeline_checks(&self, pipeline: &Pipeline, opts: &RunOptions, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
        let proc = pipeline.procedure();
        let mut checks = vec![self.left_inverse_check(proc, opts.inject_fault)?];

        let mut worst = Residuals::default();
        for _ in 0..self.cfg.trials {
            worst.merge(self.trial(pipeline, rng)?);
        }
        checks.push(Check::new("coefficient_roundtrip", worst.coefficient, ROUNDTRIP_TOL, Relation::Below));
        checks.push(Check::new("function_two_path", worst.two_path, ROUNDTRIP_TOL, Relation::Below));
        checks.push(Check::new(
            "function_reconstruction",
            worst.function,
            RECONSTRUCTION_TOL,
            Relation::Below,
        ));
        checks.push(Check::new("stability_sandwich", worst.sandwich, DETERMINANT_SLACK, Relation::AtMost));
        if let Some(c) = worst.consistency {
            let name = match pipeline {
                Pipeline::Finite(_) => "finite_index_coherence",
                _ => "sample_consistency",
            };
            checks.push(Check::new(name, c, ROUNDTRIP_TOL, Relation::Below));
        }
        if proc.diagnostics().is_riesz && self.probes.is_some() {
            checks.push(Check::new(
                "interpolation",
                proc.interpolation_check()?,
                INTERPOLATION_TOL,
                Relation::Below,
            ));
        }
        Ok(checks)
    }

    fn left_inverse_check(&self, proc: &SamplingProcedure, fault: bool) -> Result<Check> {
        let b = proc.inverse().coefficients();
        let residual = if fault {
            let mut entries = b.entries().to_vec();
            let first = &entries[0];
            let mut values = first.values().to_vec();
            values[0] += FAULT_SIZE;
            entries[0] = GroupSequence::new(first.group().clone(), values)?;
            let perturbed = SequenceMatrix::new(b.group().clone(), b.rows(), b.cols(), entries)?;
            verify_left_inverse(proc.system(), &perturbed)?
        } else {
            verify_left_inverse(proc.system(), b)?
        };
        Ok(Check::new("left_inverse", residual, ROUNDTRIP_TOL, Relation::Below))
    }

    fn trial(&self, pipeline: &Pipeline, rng: &mut ChaCha8Rng) -> Result<Residuals> {
        let proc = pipeline.procedure();
        let diag = proc.diagnostics();
        match pipeline {
            Pipeline::Plain(p) => {
                let model = p.model();
                let x = random_vector(model.coefficient_group(), model.generator_count(), rng);
                let f = model.synthesize(&x)?;
                let truth = model.analysis_transform(&f)?;
                let samples = p.take_samples(&x)?;
                let consistency = match p.probes() {
                    Some(_) => Some(relative(p.samples_of(&f)?.max_abs_diff(&samples)?, max_abs(&samples))),
                    None => None,
                };
                let rec = p.reconstruct_function(&samples)?;
                Ok(Residuals {
                    coefficient: p.reconstruct_coefficients(&samples)?.relative_error(&x)?,
                    function: function_error(&rec, &truth)?,
                    two_path: relative(
                        rec.max_abs_diff(&p.reconstruct_function_via_coefficients(&samples)?)?,
                        truth.max_abs(),
                    ),
                    consistency,
                    sandwich: sandwich_violation(diag, samples.norm_sqr(), x.norm_sqr()),
                })
            }
            Pipeline::Finite(fp) => {
                let model = self.model.translation();
                let x = random_vector(model.coefficient_group(), model.generator_count(), rng);
                let truth = model.analysis_transform(&model.synthesize(&x)?)?;
                let samples = fp.take_samples(&x)?;
                let consistency = match &self.probes {
                    Some(p) => {
                        // Samples computed at the level of H, read off at R.
                        let full = model.sample_matrix(p)?.apply(&x)?;
                        let coarse = fp.coarse();
                        let mut diff: f64 = 0.0;
                        for (m, seq) in samples.components().iter().enumerate() {
                            for (r, v) in seq.values().iter().enumerate() {
                                diff = diff.max((v - full.component(m).at(coarse.embed_index(r))).norm());
                            }
                        }
                        Some(relative(diff, max_abs(&samples)))
                    }
                    None => None,
                };
                let rec = fp.reconstruct_function(&samples)?;
                let via = fp.procedure().reconstruct_function_via_coefficients(&samples)?;
                Ok(Residuals {
                    coefficient: fp.reconstruct_coefficients(&samples)?.relative_error(&x)?,
                    function: function_error(&rec, &truth)?,
                    two_path: relative(rec.max_abs_diff(&via)?, truth.max_abs()),
                    consistency,
                    sandwich: sandwich_violation(diag, samples.norm_sqr(), x.norm_sqr()),
                })
            }
            Pipeline::Semidirect(sp) => {
                let model = sp.model();
                let count = model.lattice().abstract_group().order() * model.rotations().order();
                let x: Vec<Complex64> = (0..count).map(|_| random_complex(rng)).collect();
                let f = model.synthesize_direct(&x)?;
                let truth = model.analysis_transform(&f)?;
                let xs = model.regroup(&x)?;
                let samples = proc.take_samples(&xs)?;
                let consistency = match proc.probes() {
                    Some(_) => Some(relative(sp.samples_of(&f)?.max_abs_diff(&samples)?, max_abs(&samples))),
                    None => None,
                };
                let rec = sp.reconstruct(&samples)?;
                let coeffs = proc.reconstruct_coefficients(&samples)?;
                let via = model.analysis_transform(&proc.model().synthesize(&coeffs)?)?;
                Ok(Residuals {
                    coefficient: coeffs.relative_error(&xs)?,
                    function: function_error(&rec, &truth)?,
                    two_path: relative(rec.max_abs_diff(&via)?, truth.max_abs()),
                    consistency,
                    sandwich: sandwich_violation(diag, samples.norm_sqr(), xs.norm_sqr()),
                })
            }
        }
    }

    fn verify(&self, opts: &RunOptions) -> Result<Vec<Check>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut checks = self.foundation_checks(&mut rng)?;
        if let BuiltModel::Semidirect { model, .. } = &self.model {
            checks.extend(semidirect_checks(model, &mut rng)?);
        }
        if self.diagnostics.is_frame {
            let pipeline = self.pipeline()?;
            checks.extend(self.pipeline_checks(&pipeline, opts, &mut rng)?);
        } else {
            // No left inverse exists; confirm that some nonzero x is
            // invisible to the samples.
            let x = null_direction(&self.system, &self.diagnostics);
            let energy = self.system.apply(&x)?.norm_sqr() / x.norm_sqr();
            let n = self.system.cols() as f64;
            let bound = self.diagnostics.tol.max(0.0).powf(1.0 / n) + 1e-14;
            checks.push(Check::new("necessity_witness", energy, bound, Relation::AtMost));
        }
        Ok(checks)
    }

    fn foundation_checks(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
        let g = self.sampling_model().ambient().clone();
        let h = self.system.group().clone();
        let trials = self.cfg.trials;
        let (mut roundtrip, mut plancherel, mut convolution, mut involution, mut adjoint) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for _ in 0..trials {
            let x = random_sequence(&g, rng);
            let a = random_sequence(&g, rng);
            let xh = x.dft();
            roundtrip = roundtrip.max(xh.idft().max_abs_diff(&x)?);
            let energy = x.norm_sqr();
            plancherel = plancherel.max(relative((energy - xh.norm_sqr() / g.order() as f64).abs(), energy));
            let lhs = a.convolve(&x)?.dft();
            let rhs = GroupSequence::new(
                g.clone(),
                a.dft().values().iter().zip(xh.values()).map(|(p, q)| p * q).collect(),
            )?;
            convolution = convolution.max(relative(lhs.max_abs_diff(&rhs)?, rhs.max_abs()));
            involution = involution.max(a.involution().involution().max_abs_diff(&a)?);

            let v = random_vector(&h, self.system.cols(), rng);
            let w = random_vector(&h, self.system.rows(), rng);
            let left = self.system.apply(&v)?.inner(&w)?;
            let right = v.inner(&self.system.adjoint().apply(&w)?)?;
            adjoint = adjoint.max(relative((left - right).norm(), self.system.apply(&v)?.norm() * w.norm()));
        }
        let mut checks = vec![
            Check::new("dft_roundtrip", roundtrip, DFT_ROUNDTRIP_TOL, Relation::Below),
            Check::new("plancherel", plancherel, FOUNDATION_TOL, Relation::Below),
            Check::new("convolution_theorem", convolution, FOUNDATION_TOL, Relation::Below),
            Check::new("involution", involution, 0.0, Relation::AtMost),
            Check::new("adjoint_identity", adjoint, FOUNDATION_TOL, Relation::Below),
        ];

        let d = &self.diagnostics;
        let n = self.system.cols() as i32;
        let upper = d.alpha * d.beta.powi(n - 1);
        let violation = (d.alpha.powi(n) - d.delta).max(d.delta - upper).max(0.0);
        checks.push(Check::new(
            "determinant_bounds",
            relative(violation, upper.max(f64::MIN_POSITIVE)),
            DETERMINANT_SLACK,
            Relation::AtMost,
        ));
        match oracle_frame_bounds(&self.system, DEFAULT_ORACLE_CAP) {
            Ok((lo, hi)) => {
                let err = (lo - d.alpha).abs().max((hi - d.beta).abs());
                checks.push(Check::new("oracle_bounds", relative(err, d.beta), ORACLE_TOL, Relation::Below));
            }
            Err(Error::CapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }

        let model = self.sampling_model();
        if model.window_spans_ambient() && g.order() <= DEFAULT_GRAM_CAP {
            let kernel = model.reproducing_kernel()?;
            let mut worst: f64 = 0.0;
            for _ in 0..trials {
                let f = random_sequence(&g, rng);
                let big_f = model.analysis_transform(&f)?;
                worst = worst.max(function_error(&kernel.reproduce(&big_f)?, &big_f)?);
            }
            checks.push(Check::new("reproducing_kernel", worst, FOUNDATION_TOL, Relation::Below));
        }
        Ok(checks)
    }
}

fn max_abs(v: &VectorSequence) -> f64 {
    v.components().iter().map(GroupSequence::max_abs).fold(0.0, f64::max)
}

/// `U(a) U(b) = U(ab)` and `<U f, U g> = <f, g>` over the whole group, on
/// integer data so both hold bit for bit.
fn semidirect_checks(model: &SemidirectModel, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let torus = model.torus();
    let f = random_integer_sequence(torus, rng);
    let other = random_integer_sequence(torus, rng);
    let elements: Vec<_> = model
        .rotations()
        .elements()
        .into_iter()
        .flat_map(|g| (0..torus.order()).map(move |s| (s, g)))
        .collect();
    let base = f.inner(&other)?;
    let (mut composition, mut unitarity) = (0.0f64, 0.0f64);
    for &a in &elements {
        let ua = model.quasi_regular_apply(a.0, a.1, &f)?;
        let ub_other = model.quasi_regular_apply(a.0, a.1, &other)?;
        unitarity = unitarity.max((ua.inner(&ub_other)? - base).norm());
        for &b in &elements {
            let ub = model.quasi_regular_apply(b.0, b.1, &f)?;
            let lhs = model.quasi_regular_apply(a.0, a.1, &ub)?;
            let (s, g) = model.compose(a, b);
            let rhs = model.quasi_regular_apply(s, g, &f)?;
            composition = composition.max(lhs.max_abs_diff(&rhs)?);
        }
    }
    Ok(vec![
        Check::new("composition_law", composition, 0.0, Relation::AtMost),
        Check::new("unitarity", unitarity, 0.0, Relation::AtMost),
    ])
}

/// JSON with every float written to 17 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Precise(serde_json::ser::PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

struct Precise<'a>(serde_json::ser::PrettyFormatter<'a>);

impl serde_json::ser::Formatter for Precise<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_json(&vec![0.1f64, 1.0, -2.5e-300]).unwrap();
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.contains("1.0000000000000000e0"));
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![0.1, 1.0, -2.5e-300]);
    }

    #[test]
    fn bundled_scenarios_parse() {
        assert_eq!(bundled_configs().len(), 5);
    }
}
