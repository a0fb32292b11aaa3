//! Campaign configuration files and their validated execution plans.
//!
//! Configs are JSON with unknown keys rejected. `simulate` and `ratio`
//! share [`ExperimentConfig`]; `lemma1` and `oracle` have their own
//! smaller schemas.

use serde::{Deserialize, Serialize};

use crate::channel::NoiseModel;
use crate::estimators::{EstimatorKind, EstimatorSpec};
use crate::priors::{BernoulliGaussianPrior, GaussianComponent, GaussianMixturePrior, Prior};
use crate::theory::TypicalSetSpec;
use crate::{Error, Result};

/// Largest dimension accepted without `allow_large`.
pub const MAX_N: usize = 1_000_000;
/// Largest dimension accepted with `allow_large`.
pub const MAX_N_LARGE: usize = 10_000_000;

fn default_n_values() -> Vec<usize> {
    vec![1_000, 10_000, 100_000, 1_000_000]
}

/// One prior, as written in a config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PriorConfig {
    Bg { s: f64, mean: f64, variance: f64 },
    Gm { components: Vec<ComponentConfig> },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentConfig {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

impl PriorConfig {
    pub fn build(&self) -> Result<Prior> {
        match self {
            PriorConfig::Bg { s, mean, variance } => Ok(Prior::Bg(
                BernoulliGaussianPrior::new(*s, *mean, *variance).map_err(config_err)?,
            )),
            PriorConfig::Gm { components } => {
                let components = components
                    .iter()
                    .map(|c| GaussianComponent::new(c.weight, c.mean, c.variance))
                    .collect::<Result<Vec<_>>>()
                    .map_err(config_err)?;
                Ok(Prior::Gm(
                    GaussianMixturePrior::new(components).map_err(config_err)?,
                ))
            }
        }
    }
}

fn config_err(err: Error) -> Error {
    Error::Config(err.to_string())
}

/// How the typical-set tolerance ε shrinks with the signal dimension:
/// either the named rule `"n_quarter"` (ε = n^(−1/4)) or one explicit
/// value per entry of `n_values`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsilonSchedule {
    Named(ScheduleName),
    Explicit(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleName {
    NQuarter,
}

impl Default for EpsilonSchedule {
    fn default() -> Self {
        EpsilonSchedule::Named(ScheduleName::NQuarter)
    }
}

/// Accept estimators both as bare kind strings (`"wiener_bg"`) and as
/// tagged objects (`{"estimator": "wiener_bg"}`).
fn deserialize_estimators<'de, D>(
    deserializer: D,
) -> std::result::Result<Vec<EstimatorKind>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Kind(EstimatorKind),
        Tagged {
            #[serde(rename = "estimator")]
            kind: EstimatorKind,
        },
    }
    let entries = Vec::<Entry>::deserialize(deserializer)?;
    Ok(entries
        .into_iter()
        .map(|entry| match entry {
            Entry::Kind(kind) | Entry::Tagged { kind } => kind,
        })
        .collect())
}

impl EpsilonSchedule {
    fn epsilon_for(&self, n: usize, n_index: usize) -> f64 {
        match self {
            EpsilonSchedule::Named(ScheduleName::NQuarter) => (n as f64).powf(-0.25),
            EpsilonSchedule::Explicit(values) => values[n_index],
        }
    }
}

/// Configuration of a `simulate`/`ratio` campaign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub prior: PriorConfig,
    pub noise_variance: f64,
    #[serde(deserialize_with = "deserialize_estimators")]
    pub estimators: Vec<EstimatorKind>,
    #[serde(default = "default_n_values")]
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub epsilon_schedule: EpsilonSchedule,
    #[serde(default)]
    pub output_path: Option<String>,
    #[serde(default)]
    pub allow_large: bool,
}

/// A validated, ready-to-run campaign.
#[derive(Clone, Debug)]
pub struct CampaignPlan {
    pub prior: Prior,
    pub noise: NoiseModel,
    pub specs: Vec<EstimatorSpec>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Per n: one ε per prior component slot (a single ε for the
    /// Bernoulli-Gaussian prior).
    pub epsilons: Vec<Vec<f64>>,
    /// Per n: the scalar ε the schedule produced.
    pub epsilon_scalars: Vec<f64>,
    /// Per n: the typical-set defect δ, when defined for this prior.
    pub deltas: Vec<Option<f64>>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn plan(&self) -> Result<CampaignPlan> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values must be nonempty".into()));
        }
        let cap = if self.allow_large { MAX_N_LARGE } else { MAX_N };
        for &n in &self.n_values {
            if n < 2 {
                return Err(Error::Config(format!(
                    "n_values entries must be >= 2, got {n}"
                )));
            }
            if n > cap {
                return Err(Error::Config(format!(
                    "n = {n} exceeds the cap {cap}; pass allow_large for dimensions up to {MAX_N_LARGE}"
                )));
            }
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("estimators must be nonempty".into()));
        }
        if let EpsilonSchedule::Explicit(values) = &self.epsilon_schedule {
            if values.len() != self.n_values.len() {
                return Err(Error::Config(format!(
                    "epsilon_schedule lists {} values for {} n_values",
                    values.len(),
                    self.n_values.len()
                )));
            }
            if values.iter().any(|&e| !e.is_finite() || e <= 0.0) {
                return Err(Error::Config("epsilon values must be positive".into()));
            }
        }

        let prior = self.prior.build()?;
        let noise = NoiseModel::new(self.noise_variance).map_err(config_err)?;
        let specs = self
            .estimators
            .iter()
            .map(|&kind| EstimatorSpec::new(kind, prior.clone(), noise))
            .collect::<Result<Vec<_>>>()
            .map_err(config_err)?;

        let component_slots = match &prior {
            Prior::Bg(_) => 1,
            Prior::Gm(gm) => gm.component_count(),
        };
        let mut epsilons = Vec::with_capacity(self.n_values.len());
        let mut epsilon_scalars = Vec::with_capacity(self.n_values.len());
        let mut deltas = Vec::with_capacity(self.n_values.len());
        for (idx, &n) in self.n_values.iter().enumerate() {
            let eps = self.epsilon_schedule.epsilon_for(n, idx);
            let per_component = vec![eps; component_slots];
            deltas.push(match TypicalSetSpec::for_prior(&prior, &per_component) {
                Ok(spec) => Some(spec.delta),
                Err(Error::Domain(_)) => None,
                Err(e) => return Err(e),
            });
            epsilons.push(per_component);
            epsilon_scalars.push(eps);
        }

        Ok(CampaignPlan {
            prior,
            noise,
            specs,
            n_values: self.n_values.clone(),
            trials: self.trials,
            seed: self.seed,
            epsilons,
            epsilon_scalars,
            deltas,
        })
    }
}

/// Configuration of a `lemma1` campaign: maxima of i.i.d. Gaussian
/// sequences against the √(2σ²·ln n) normalizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma1Config {
    #[serde(default = "default_n_values")]
    pub n_values: Vec<usize>,
    #[serde(default = "default_variance")]
    pub variance: f64,
    #[serde(default)]
    pub mean: f64,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub output_path: Option<String>,
    #[serde(default)]
    pub allow_large: bool,
}

fn default_variance() -> f64 {
    1.0
}

impl Lemma1Config {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values must be nonempty".into()));
        }
        let cap = if self.allow_large { MAX_N_LARGE } else { MAX_N };
        for &n in &self.n_values {
            if n < 2 {
                return Err(Error::Config(format!(
                    "n_values entries must be >= 2, got {n}"
                )));
            }
            if n > cap {
                return Err(Error::Config(format!("n = {n} exceeds the cap {cap}")));
            }
        }
        if !(self.variance > 0.0 && self.variance.is_finite()) {
            return Err(Error::Config(format!(
                "variance must be positive, got {}",
                self.variance
            )));
        }
        if !self.mean.is_finite() {
            return Err(Error::Config("mean must be finite".into()));
        }
        Ok(())
    }
}

/// Configuration of an `oracle` comparison campaign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCampaignConfig {
    pub prior: PriorConfig,
    pub noise_variance: f64,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_posterior_samples")]
    pub posterior_samples: usize,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default = "default_step_scale")]
    pub step_scale: f64,
    #[serde(default)]
    pub output_path: Option<String>,
}

fn default_posterior_samples() -> usize {
    4096
}

fn default_iterations() -> usize {
    2000
}

fn default_step_scale() -> f64 {
    0.5
}

impl OracleCampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.n < 1 || self.n > crate::oracle::MAX_ORACLE_DIM {
            return Err(Error::Config(format!(
                "oracle n must be in 1..={}, got {}",
                crate::oracle::MAX_ORACLE_DIM,
                self.n
            )));
        }
        if !(self.noise_variance > 0.0 && self.noise_variance.is_finite()) {
            return Err(Error::Config(
                "oracle campaigns need positive noise variance".into(),
            ));
        }
        let oracle_cfg = crate::oracle::OracleConfig {
            posterior_samples: self.posterior_samples,
            iterations: self.iterations,
            step_scale: self.step_scale,
            seed: self.seed,
        };
        oracle_cfg.validate().map_err(config_err)?;
        self.prior.build().map(|_| ())
    }
}
