//! Generalized sampling at a subgroup: samples `L_A F = A * x`, the dual
//! generators `b_m`, sampling functions `S_m` and reconstruction.

use num_complex::Complex64;
use serde::Serialize;

use crate::dual::{left_inverse_family, moore_penrose, square_inverse, verify_left_inverse, LeftInverse};
use crate::error::{Error, Result};
use crate::frame::{diagnostics, FrameDiagnostics};
use crate::group::{GroupSequence, GroupSpec, ProductSubgroup};
use crate::model::{correlate, FunctionOnG, TranslationModel};
use crate::semidirect::SemidirectModel;
use crate::system::{SequenceMatrix, TransferMatrix, VectorSequence};

/// A procedure is rejected when `B_hat A_hat` misses `I_N` by more than this.
pub const LEFT_INVERSE_TOL: f64 = 1e-9;

/// Samples `L_m F(t)`, one sequence per row of `A`, over the abstract subgroup.
pub type SampleSet = VectorSequence;

#[derive(Clone, Debug, PartialEq)]
pub enum DualChoice {
    MoorePenrose,
    /// `B_hat = A_hat^+ + C (I - A_hat A_hat^+)` for the given `N x M` matrix `C`.
    Family(TransferMatrix),
    Square,
}

impl DualChoice {
    pub fn build(&self, a: &SequenceMatrix) -> Result<LeftInverse> {
        match self {
            DualChoice::MoorePenrose => moore_penrose(a),
            DualChoice::Family(c) => left_inverse_family(a, c),
            DualChoice::Square => square_inverse(a),
        }
    }
}

/// The functions `S_m(s) = <beta_m, U(s) phi>` with `beta_m = T_Phi b_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplingFunctions {
    pub beta: Vec<GroupSequence>,
    pub functions: Vec<FunctionOnG>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingProcedure {
    #[serde(skip)]
    model: TranslationModel,
    #[serde(skip)]
    probes: Option<Vec<GroupSequence>>,
    system: SequenceMatrix,
    diagnostics: FrameDiagnostics,
    inverse: LeftInverse,
}

impl SamplingProcedure {
    /// Builds a procedure for an explicit `M x N` system over the
    /// coefficient group. `tol` overrides the frame tolerance.
    pub fn new(model: TranslationModel, system: SequenceMatrix, choice: &DualChoice, tol: Option<f64>) -> Result<Self> {
        model.coefficient_group().ensure_same(system.group())?;
        if system.cols() != model.generator_count() {
            return Err(Error::Dimension(format!(
                "system has {} columns for {} generators",
                system.cols(),
                model.generator_count()
            )));
        }
        let diag = diagnostics(&system, tol);
        if !diag.is_frame {
            return Err(Error::NotAFrame {
                delta: diag.delta,
                tol: diag.tol,
            });
        }
        let inverse = choice.build(&system)?;
        let residual = verify_left_inverse(&system, inverse.coefficients())?;
        if residual >= LEFT_INVERSE_TOL {
            return Err(Error::Precondition(format!(
                "left inverse residual {residual:e} exceeds {LEFT_INVERSE_TOL:e}"
            )));
        }
        Ok(Self {
            model,
            probes: None,
            system,
            diagnostics: diag,
            inverse,
        })
    }

    /// The system `a_{m,n}(h) = <phi_n, U(h) psi_m>` of the given probes.
    pub fn from_probes(model: TranslationModel, probes: Vec<GroupSequence>, choice: &DualChoice, tol: Option<f64>) -> Result<Self> {
        let system = model.sample_matrix(&probes)?;
        let mut proc = Self::new(model, system, choice, tol)?;
        proc.probes = Some(probes);
        Ok(proc)
    }

    pub fn model(&self) -> &TranslationModel {
        &self.model
    }

    pub fn probes(&self) -> Option<&[GroupSequence]> {
        self.probes.as_deref()
    }

    pub fn system(&self) -> &SequenceMatrix {
        &self.system
    }

    pub fn diagnostics(&self) -> &FrameDiagnostics {
        &self.diagnostics
    }

    pub fn inverse(&self) -> &LeftInverse {
        &self.inverse
    }

    pub fn sample_count(&self) -> usize {
        self.system.rows()
    }

    pub fn take_samples(&self, x: &VectorSequence) -> Result<SampleSet> {
        self.system.apply(x)
    }

    /// Samples of an ambient function. With probes this is the direct
    /// correlation `<f, U(h) psi_m>`; otherwise `f` is first projected
    /// onto the model space.
    pub fn samples_of(&self, f: &GroupSequence) -> Result<SampleSet> {
        match &self.probes {
            Some(probes) => probe_samples(self.model.subgroup(), probes, f),
            None => self.take_samples(&self.model.coefficients_of(f)?),
        }
    }

    pub fn reconstruct_coefficients(&self, samples: &SampleSet) -> Result<VectorSequence> {
        self.inverse.coefficients().apply(samples)
    }

    pub fn sampling_functions(&self) -> Result<SamplingFunctions> {
        let b = self.inverse.coefficients();
        let beta = (0..b.cols())
            .map(|m| self.model.synthesize(&b.column(m)))
            .collect::<Result<Vec<_>>>()?;
        let functions = beta
            .iter()
            .map(|bm| self.model.analysis_transform(bm))
            .collect::<Result<Vec<_>>>()?;
        Ok(SamplingFunctions { beta, functions })
    }

    /// `F(s) = sum_m sum_t L_m F(t) S_m(s - t)`, summed directly.
    pub fn reconstruct_function(&self, samples: &SampleSet) -> Result<FunctionOnG> {
        let functions = self.sampling_functions()?.functions;
        let sequences: Vec<GroupSequence> = functions
            .iter()
            .map(|s| s.as_sequence().expect("translation model functions live on G"))
            .collect();
        let values = expand(self.model.ambient(), self.model.subgroup(), samples, &sequences, self.sample_count())?;
        Ok(FunctionOnG::on_group(values))
    }

    /// The same function reached through `B`, synthesis and analysis.
    pub fn reconstruct_function_via_coefficients(&self, samples: &SampleSet) -> Result<FunctionOnG> {
        let x = self.reconstruct_coefficients(samples)?;
        self.model.analysis_transform(&self.model.synthesize(&x)?)
    }

    /// Largest deviation of `L_n S_n'(. - t')` from `delta_{n n'} delta_{t t'}`.
    pub fn interpolation_check(&self) -> Result<f64> {
        let (m, n) = (self.system.rows(), self.system.cols());
        if m != n || !self.diagnostics.is_riesz {
            return Err(Error::Precondition(format!(
                "interpolation needs a square Riesz system, got {m}x{n}"
            )));
        }
        let beta = self.sampling_functions()?.beta;
        let h = self.model.coefficient_group();
        let mut worst: f64 = 0.0;
        for (np, bm) in beta.iter().enumerate() {
            for tp in 0..h.order() {
                let shifted = bm.translate(self.model.subgroup().embed_index(tp));
                let samples = self.samples_of(&shifted)?;
                for (row, seq) in samples.components().iter().enumerate() {
                    for (t, v) in seq.values().iter().enumerate() {
                        let target = if row == np && t == tp { 1.0 } else { 0.0 };
                        worst = worst.max((v - target).norm());
                    }
                }
            }
        }
        Ok(worst)
    }
}

fn probe_samples(subgroup: &ProductSubgroup, probes: &[GroupSequence], f: &GroupSequence) -> Result<SampleSet> {
    let h = subgroup.abstract_group();
    let components = probes
        .iter()
        .map(|psi| {
            let corr = correlate(f, psi)?;
            Ok(GroupSequence::from_fn(h.clone(), |k| corr.at(subgroup.embed_index(k))))
        })
        .collect::<Result<Vec<_>>>()?;
    VectorSequence::new(components)
}

/// `sum_m sum_t c_m(t) S_m(s - embed(t))` for functions on `g`.
fn expand(
    g: &GroupSpec,
    subgroup: &ProductSubgroup,
    samples: &SampleSet,
    functions: &[GroupSequence],
    rows: usize,
) -> Result<GroupSequence> {
    subgroup.abstract_group().ensure_same(samples.group())?;
    if samples.len() != rows {
        return Err(Error::Dimension(format!("{} sample sequences, expected {rows}", samples.len())));
    }
    let mut out = GroupSequence::zeros(g.clone());
    for (seq, s_m) in samples.components().iter().zip(functions) {
        for (t, &c) in seq.values().iter().enumerate() {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let shift = subgroup.embed_index(t);
            for (s, v) in out.values_mut().iter_mut().enumerate() {
                *v += c * s_m.at(g.sub_indices(s, shift));
            }
        }
    }
    Ok(out)
}

/// Pointwise sampling `F(h)` of a single-generator model. Fails with the
/// characters where `a_hat` vanishes.
pub fn shannon_procedure(model: TranslationModel, tol: Option<f64>) -> Result<SamplingProcedure> {
    if model.generator_count() != 1 {
        return Err(Error::Precondition(format!(
            "pointwise sampling needs one generator, got {}",
            model.generator_count()
        )));
    }
    let probes = vec![model.window().clone()];
    let system = model.sample_matrix(&probes)?;
    let diag = diagnostics(&system, tol);
    let singular = diag.degenerate_characters();
    if !singular.is_empty() {
        return Err(Error::SingularCharacters { characters: singular });
    }
    let mut proc = SamplingProcedure::new(model, system, &DualChoice::Square, tol)?;
    proc.probes = Some(probes);
    Ok(proc)
}

/// Sampling at a subgroup `R` of `H` with index `L`, handled as an
/// ordinary procedure over `R` with the `N L` generators
/// `phi_{nl} = U(h_l) phi_n`, stored at `n L + l`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteIndexProcedure {
    coarse: ProductSubgroup,
    representatives: Vec<usize>,
    generator_count: usize,
    inner: SamplingProcedure,
}

impl FiniteIndexProcedure {
    /// `r_strides` are taken in the coordinates of the coefficient group `H`.
    pub fn new(
        model: &TranslationModel,
        r_strides: Vec<usize>,
        system: SequenceMatrix,
        choice: &DualChoice,
        tol: Option<f64>,
    ) -> Result<Self> {
        let (coarse, regrouped) = Self::regrouped_model(model, r_strides)?;
        let nl = regrouped.generator_count();
        if system.rows() < nl {
            return Err(Error::Precondition(format!(
                "stability needs M >= N L, got M = {} < {nl}",
                system.rows()
            )));
        }
        let inner = SamplingProcedure::new(regrouped, system, choice, tol)?;
        Ok(Self::assemble(model, coarse, inner))
    }

    pub fn from_probes(
        model: &TranslationModel,
        r_strides: Vec<usize>,
        probes: Vec<GroupSequence>,
        choice: &DualChoice,
        tol: Option<f64>,
    ) -> Result<Self> {
        let (coarse, regrouped) = Self::regrouped_model(model, r_strides)?;
        let nl = regrouped.generator_count();
        if probes.len() < nl {
            return Err(Error::Precondition(format!(
                "stability needs M >= N L, got M = {} < {nl}",
                probes.len()
            )));
        }
        let inner = SamplingProcedure::from_probes(regrouped, probes, choice, tol)?;
        Ok(Self::assemble(model, coarse, inner))
    }

    fn assemble(model: &TranslationModel, coarse: ProductSubgroup, inner: SamplingProcedure) -> Self {
        let representatives = coarse.coset_representatives().iter().map(|e| e.index()).collect();
        Self {
            coarse,
            representatives,
            generator_count: model.generator_count(),
            inner,
        }
    }

    /// `R` inside `H` and the model over `R` with generators `U(h_l) phi_n`.
    pub fn regrouped_model(model: &TranslationModel, r_strides: Vec<usize>) -> Result<(ProductSubgroup, TranslationModel)> {
        let coarse = ProductSubgroup::new(model.coefficient_group().clone(), r_strides)?;
        let composite: Vec<usize> = model
            .subgroup()
            .strides()
            .iter()
            .zip(coarse.strides())
            .map(|(a, b)| a * b)
            .collect();
        let r_in_g = ProductSubgroup::new(model.ambient().clone(), composite)?;
        let generators = model
            .generators()
            .iter()
            .flat_map(|phi| {
                coarse
                    .coset_representatives()
                    .into_iter()
                    .map(move |h| phi.translate(model.subgroup().embed_index(h.index())))
            })
            .collect();
        let regrouped = TranslationModel::new(model.window().clone(), r_in_g, generators)?;
        Ok((coarse, regrouped))
    }

    /// `R` as a subgroup of the coefficient group `H`.
    pub fn coarse(&self) -> &ProductSubgroup {
        &self.coarse
    }

    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    pub fn procedure(&self) -> &SamplingProcedure {
        &self.inner
    }

    /// `x_{nl}(r) = x_n(h_l + r)`.
    pub fn regroup(&self, x: &VectorSequence) -> Result<VectorSequence> {
        self.coarse.parent().ensure_same(x.group())?;
        if x.len() != self.generator_count {
            return Err(Error::Dimension(format!("{} components, expected {}", x.len(), self.generator_count)));
        }
        let h = self.coarse.parent();
        let r = self.coarse.abstract_group();
        let components = x
            .components()
            .iter()
            .flat_map(|xn| {
                self.representatives.iter().map(move |&hl| {
                    GroupSequence::from_fn(r.clone(), |k| xn.at(h.add_indices(hl, self.coarse.embed_index(k))))
                })
            })
            .collect();
        VectorSequence::new(components)
    }

    /// Inverse of [`regroup`](Self::regroup).
    pub fn ungroup(&self, x: &VectorSequence) -> Result<VectorSequence> {
        self.coarse.abstract_group().ensure_same(x.group())?;
        let l = self.index();
        if x.len() != self.generator_count * l {
            return Err(Error::Dimension(format!(
                "{} components, expected {}",
                x.len(),
                self.generator_count * l
            )));
        }
        let h = self.coarse.parent();
        let components = (0..self.generator_count)
            .map(|n| {
                GroupSequence::from_fn(h.clone(), |idx| {
                    let (coset, k) = self.coarse.decompose_index(idx);
                    x.component(n * l + coset).at(k)
                })
            })
            .collect();
        VectorSequence::new(components)
    }

    /// Samples over `R` of coefficients given over `H`.
    pub fn take_samples(&self, x: &VectorSequence) -> Result<SampleSet> {
        self.inner.take_samples(&self.regroup(x)?)
    }

    /// Recovered coefficients over `H`.
    pub fn reconstruct_coefficients(&self, samples: &SampleSet) -> Result<VectorSequence> {
        self.ungroup(&self.inner.reconstruct_coefficients(samples)?)
    }

    pub fn reconstruct_function(&self, samples: &SampleSet) -> Result<FunctionOnG> {
        self.inner.reconstruct_function(samples)
    }
}

/// Sampling of `F(s, g) = <f, U(s, g) phi>` at the lattice `K'` through
/// the reduced abelian model.
#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectProcedure {
    model: SemidirectModel,
    inner: SamplingProcedure,
}

impl SemidirectProcedure {
    /// An explicit system over the lattice with one column per rotation.
    pub fn new(model: SemidirectModel, system: SequenceMatrix, choice: &DualChoice, tol: Option<f64>) -> Result<Self> {
        let inner = SamplingProcedure::new(model.reduce()?, system, choice, tol)?;
        Ok(Self { model, inner })
    }

    pub fn from_probes(model: SemidirectModel, probes: Vec<GroupSequence>, choice: &DualChoice, tol: Option<f64>) -> Result<Self> {
        let inner = SamplingProcedure::from_probes(model.reduce()?, probes, choice, tol)?;
        Ok(Self { model, inner })
    }

    pub fn model(&self) -> &SemidirectModel {
        &self.model
    }

    pub fn procedure(&self) -> &SamplingProcedure {
        &self.inner
    }

    pub fn samples_of(&self, f: &GroupSequence) -> Result<SampleSet> {
        self.inner.samples_of(f)
    }

    /// `S_m(s, g) = <beta_m, U(s, g) phi>`.
    pub fn sampling_functions(&self) -> Result<Vec<FunctionOnG>> {
        self.inner
            .sampling_functions()?
            .beta
            .iter()
            .map(|b| self.model.analysis_transform(b))
            .collect()
    }

    /// `F(s, g) = sum_m sum_k L_m F(k) S_m(s - k, g)` on all of `torus x| Gamma`.
    pub fn reconstruct(&self, samples: &SampleSet) -> Result<FunctionOnG> {
        let torus = self.model.torus();
        let order = torus.order();
        let functions = self.sampling_functions()?;
        let mut values = Vec::with_capacity(order * self.model.rotations().order());
        for g in 0..self.model.rotations().order() {
            let slices: Vec<GroupSequence> = functions
                .iter()
                .map(|s| GroupSequence::new(torus.clone(), s.values()[g * order..(g + 1) * order].to_vec()))
                .collect::<Result<_>>()?;
            let part = expand(torus, self.model.lattice(), samples, &slices, self.inner.sample_count())?;
            values.extend(part.into_values());
        }
        FunctionOnG::new(self.model.domain(), values)
    }
}
