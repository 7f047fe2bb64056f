//! Scenario files: a model, a sampling system and the run options.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupSequence, GroupSpec, ProductSubgroup};
use crate::model::TranslationModel;
use crate::semidirect::{RotationGroup, SemidirectModel};
use crate::system::SequenceMatrix;

/// A signal given either as real values or as `{re, im}` arrays, laid out
/// row-major over the group it belongs to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Signal {
    Real(Vec<f64>),
    Complex(ComplexSignal),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSignal {
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

impl Signal {
    pub fn on(&self, group: &GroupSpec) -> Result<GroupSequence> {
        let values: Vec<Complex64> = match self {
            Signal::Real(re) => re.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
            Signal::Complex(c) => match &c.im {
                None => c.re.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
                Some(im) if im.len() == c.re.len() => {
                    c.re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect()
                }
                Some(im) => {
                    return Err(Error::Schema(format!("re has {} values, im has {}", c.re.len(), im.len())))
                }
            },
        };
        if values.len() != group.order() {
            return Err(Error::Schema(format!(
                "signal has {} values, group {:?} has order {}",
                values.len(),
                group.moduli(),
                group.order()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Schema("signal values must be finite".into()));
        }
        GroupSequence::new(group.clone(), values)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeftInverseKind {
    #[default]
    MoorePenrose,
    Family,
    Square,
}

impl LeftInverseKind {
    pub fn name(&self) -> &'static str {
        match self {
            LeftInverseKind::MoorePenrose => "moore_penrose",
            LeftInverseKind::Family => "family",
            LeftInverseKind::Square => "square",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Translation,
    Semidirect,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(rename = "type")]
    pub kind: ModelKind,
    pub moduli: Vec<i64>,
    /// The window; defaults to the delta at the origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Signal>,
    #[serde(rename = "H_strides")]
    pub h_strides: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Signal>,
    #[serde(rename = "Gamma", default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<RotationGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub varphi: Option<Signal>,
}

/// An `rows x cols` matrix of signals over the coefficient group, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Signal>,
}

impl MatrixConfig {
    pub fn on(&self, group: &GroupSpec) -> Result<SequenceMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Schema(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        let entries = self.entries.iter().map(|e| e.on(group)).collect::<Result<Vec<_>>>()?;
        SequenceMatrix::new(group.clone(), self.rows, self.cols, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteIndexConfig {
    #[serde(rename = "R_strides")]
    pub r_strides: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub model: ModelConfig,
    /// Probe functions `psi_m` on the ambient group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<Signal>>,
    /// An explicit system over the sampling subgroup.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<MatrixConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_index: Option<FiniteIndexConfig>,
    #[serde(default)]
    pub left_inverse: LeftInverseKind,
    /// `N x M` matrix `C` for the family member; drawn from the seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_c: Option<MatrixConfig>,
    #[serde(default)]
    pub seed: u64,
    /// Absolute threshold on `delta_A`; defaults to `1e-10 beta_A^N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
}

fn default_trials() -> usize {
    4
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteFile {
    scenarios: Vec<ScenarioConfig>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ConfigFile {
    Suite(SuiteFile),
    Single(Box<ScenarioConfig>),
}

fn strides(v: &[i64], what: &str) -> Result<Vec<usize>> {
    v.iter()
        .map(|&s| {
            usize::try_from(s)
                .ok()
                .filter(|&s| s >= 1)
                .ok_or_else(|| Error::Schema(format!("{what} must be positive integers, got {v:?}")))
        })
        .collect()
}

/// Parses a single scenario or a `{"scenarios": [...]}` suite; every
/// scenario is validated before it is returned.
pub fn parse_configs(text: &str) -> Result<Vec<ScenarioConfig>> {
    let parsed: ConfigFile = serde_json::from_str(text).map_err(|e| {
        // The untagged enum hides the cause, so retry as a single scenario.
        match serde_json::from_str::<ScenarioConfig>(text) {
            Err(inner) => Error::Schema(inner.to_string()),
            Ok(_) => Error::Schema(e.to_string()),
        }
    })?;
    let configs = match parsed {
        ConfigFile::Suite(s) => s.scenarios,
        ConfigFile::Single(c) => vec![*c],
    };
    if configs.is_empty() {
        return Err(Error::Schema("the scenario list is empty".into()));
    }
    for c in &configs {
        c.validate()?;
    }
    Ok(configs)
}

/// The model of a scenario, built and checked.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltModel {
    Translation(TranslationModel),
    Semidirect {
        model: SemidirectModel,
        reduced: TranslationModel,
    },
}

impl BuiltModel {
    /// The abelian model the sampling system acts on.
    pub fn translation(&self) -> &TranslationModel {
        match self {
            BuiltModel::Translation(m) => m,
            BuiltModel::Semidirect { reduced, .. } => reduced,
        }
    }
}

impl ScenarioConfig {
    /// Schema checks that need no numerics.
    pub fn validate(&self) -> Result<()> {
        let moduli = strides(&self.model.moduli, "moduli")?;
        GroupSpec::new(moduli.clone())?;
        let h = strides(&self.model.h_strides, "H_strides")?;
        if h.len() != moduli.len() {
            return Err(Error::Schema(format!("H_strides {h:?} do not match moduli {moduli:?}")));
        }
        if self.probes.is_some() && self.system.is_some() {
            return Err(Error::Schema("give either probes or system, not both".into()));
        }
        if self.trials == 0 {
            return Err(Error::Schema("trials must be at least 1".into()));
        }
        if let Some(t) = self.tol {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::Schema(format!("tol must be a non-negative number, got {t}")));
            }
        }
        if self.family_c.is_some() && self.left_inverse != LeftInverseKind::Family {
            return Err(Error::Schema("family_c requires left_inverse = family".into()));
        }
        match self.model.kind {
            ModelKind::Translation => {
                if self.model.generators.is_empty() {
                    return Err(Error::Schema("a translation model needs generators".into()));
                }
                if self.model.gamma.is_some() || self.model.varphi.is_some() {
                    return Err(Error::Schema("Gamma and varphi belong to semidirect models".into()));
                }
            }
            ModelKind::Semidirect => {
                if self.model.gamma.is_none() || self.model.varphi.is_none() {
                    return Err(Error::Schema("a semidirect model needs Gamma and varphi".into()));
                }
                if !self.model.generators.is_empty() {
                    return Err(Error::Schema("semidirect generators come from varphi".into()));
                }
                if self.finite_index.is_some() {
                    return Err(Error::Schema("finite_index applies to translation models".into()));
                }
            }
        }
        if let Some(fi) = &self.finite_index {
            let r = strides(&fi.r_strides, "R_strides")?;
            if r.len() != moduli.len() {
                return Err(Error::Schema(format!("R_strides {r:?} do not match moduli {moduli:?}")));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> Result<GroupSpec> {
        GroupSpec::new(strides(&self.model.moduli, "moduli")?)
    }

    pub fn r_strides(&self) -> Result<Option<Vec<usize>>> {
        self.finite_index
            .as_ref()
            .map(|fi| strides(&fi.r_strides, "R_strides"))
            .transpose()
    }

    pub fn build_model(&self) -> Result<BuiltModel> {
        let g = self.group()?;
        let window = match &self.model.phi {
            Some(p) => p.on(&g)?,
            None => GroupSequence::delta(g.clone(), 0),
        };
        let subgroup = ProductSubgroup::new(g.clone(), strides(&self.model.h_strides, "H_strides")?)?;
        match self.model.kind {
            ModelKind::Translation => {
                let generators = self.model.generators.iter().map(|s| s.on(&g)).collect::<Result<Vec<_>>>()?;
                Ok(BuiltModel::Translation(TranslationModel::new(window, subgroup, generators)?))
            }
            ModelKind::Semidirect => {
                let varphi = self.model.varphi.as_ref().expect("validated").on(&g)?;
                let gamma = self.model.gamma.expect("validated");
                let model = SemidirectModel::new(window, varphi, gamma, subgroup)?;
                let reduced = model.reduce()?;
                Ok(BuiltModel::Semidirect { model, reduced })
            }
        }
    }

    /// Probe functions on the ambient group; `None` when an explicit
    /// system is given. Without either, the window itself is the probe.
    pub fn build_probes(&self, window: &GroupSequence) -> Result<Option<Vec<GroupSequence>>> {
        if self.system.is_some() {
            return Ok(None);
        }
        match &self.probes {
            Some(p) => {
                let g = window.group();
                Ok(Some(p.iter().map(|s| s.on(g)).collect::<Result<Vec<_>>>()?))
            }
            None => Ok(Some(vec![window.clone()])),
        }
    }
}
