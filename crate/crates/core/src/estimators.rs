//! Estimators x̂(r): the Wiener filters for Bernoulli-Gaussian and
//! mixture inputs, the componentwise posterior mean, a genie-aided
//! per-component Wiener filter, and the identity baseline.

use serde::{Deserialize, Serialize};

use crate::channel::{ChannelOutput, NoiseModel};
use crate::priors::{
    largest_variance_component, BernoulliGaussianPrior, ComponentView, GaussianMixturePrior, Prior,
};
use crate::stats::normal_logpdf;
use crate::{Error, Result};

/// Which estimator to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    WienerBg,
    WienerGm,
    PosteriorMean,
    GenieWiener,
    Identity,
}

impl EstimatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorKind::WienerBg => "wiener_bg",
            EstimatorKind::WienerGm => "wiener_gm",
            EstimatorKind::PosteriorMean => "posterior_mean",
            EstimatorKind::GenieWiener => "genie_wiener",
            EstimatorKind::Identity => "identity",
        }
    }
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An estimator bound to its prior and noise model.
#[derive(Clone, Debug)]
pub struct EstimatorSpec {
    kind: EstimatorKind,
    prior: Prior,
    noise: NoiseModel,
}

impl EstimatorSpec {
    /// The Wiener kinds are tied to their prior family; the remaining
    /// kinds accept either prior.
    pub fn new(kind: EstimatorKind, prior: Prior, noise: NoiseModel) -> Result<Self> {
        match (kind, &prior) {
            (EstimatorKind::WienerBg, Prior::Gm(_)) => {
                return Err(Error::InvalidArgument(
                    "wiener_bg requires a Bernoulli-Gaussian prior".into(),
                ));
            }
            (EstimatorKind::WienerGm, Prior::Bg(_)) => {
                return Err(Error::InvalidArgument(
                    "wiener_gm requires a Gaussian-mixture prior".into(),
                ));
            }
            _ => {}
        }
        if kind == EstimatorKind::PosteriorMean && noise.is_noiseless() {
            return Err(Error::InvalidArgument(
                "posterior_mean requires positive noise variance".into(),
            ));
        }
        Ok(Self { kind, prior, noise })
    }

    pub fn kind(&self) -> EstimatorKind {
        self.kind
    }

    pub fn prior(&self) -> &Prior {
        &self.prior
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }

    /// Run the estimator. `labels` is consulted only by the genie.
    pub fn apply(&self, r: &ChannelOutput, labels: &[u32]) -> Result<Vec<f64>> {
        match (self.kind, &self.prior) {
            (EstimatorKind::WienerBg, Prior::Bg(bg)) => Ok(wiener_bg(r, bg, &self.noise)),
            (EstimatorKind::WienerGm, Prior::Gm(gm)) => Ok(wiener_gm(r, gm, &self.noise)),
            (EstimatorKind::PosteriorMean, prior) => posterior_mean(r, prior, &self.noise),
            (EstimatorKind::GenieWiener, prior) => genie_wiener(r, labels, prior, &self.noise),
            (EstimatorKind::Identity, _) => Ok(identity(r)),
            _ => unreachable!("kind/prior compatibility checked at construction"),
        }
    }
}

fn affine_filter(r: &ChannelOutput, variance: f64, mean: f64, noise: &NoiseModel) -> Vec<f64> {
    if noise.is_noiseless() {
        // Gain 1: pass the observation through untouched.
        return r.values().to_vec();
    }
    let gain = variance / (variance + noise.variance_z());
    r.values()
        .iter()
        .map(|&ri| gain * (ri - mean) + mean)
        .collect()
}

/// Wiener filter for the Bernoulli-Gaussian prior:
/// x̂ = σx²/(σx²+σz²)·(r − μx) + μx.
pub fn wiener_bg(
    r: &ChannelOutput,
    prior: &BernoulliGaussianPrior,
    noise: &NoiseModel,
) -> Vec<f64> {
    affine_filter(r, prior.variance_x(), prior.mean_x(), noise)
}

/// Wiener filter for the mixture prior, tuned to the largest-variance
/// component m: x̂ = σm²/(σm²+σz²)·(r − μm) + μm.
pub fn wiener_gm(r: &ChannelOutput, prior: &GaussianMixturePrior, noise: &NoiseModel) -> Vec<f64> {
    let m = largest_variance_component(prior);
    let component = &prior.components()[m];
    affine_filter(r, component.variance(), component.mean(), noise)
}

/// Posterior component probabilities at a single observation, computed in
/// log space with max subtraction so far-tail observations cannot
/// underflow to an all-zero weight vector.
pub(crate) fn responsibilities(r_i: f64, views: &[ComponentView], variance_z: f64) -> Vec<f64> {
    let log_terms: Vec<f64> = views
        .iter()
        .map(|c| c.weight.ln() + normal_logpdf(r_i, c.mean, c.variance + variance_z))
        .collect();
    let max = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut weights: Vec<f64> = log_terms.iter().map(|&t| (t - max).exp()).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    weights
}

/// Posterior mean and variance of the signal given observation `r_i`,
/// conditional on component `view`.
pub(crate) fn conditional_moments(r_i: f64, view: &ComponentView, variance_z: f64) -> (f64, f64) {
    let total = view.variance + variance_z;
    let mean = (view.variance * r_i + variance_z * view.mean) / total;
    let variance = view.variance * variance_z / total;
    (mean, variance)
}

/// Componentwise minimum mean-square estimate E[x_i | r_i] under either
/// prior. Requires positive noise variance.
pub fn posterior_mean(r: &ChannelOutput, prior: &Prior, noise: &NoiseModel) -> Result<Vec<f64>> {
    if noise.is_noiseless() {
        return Err(Error::InvalidArgument(
            "posterior_mean requires positive noise variance".into(),
        ));
    }
    let vz = noise.variance_z();
    let views = prior.component_views();
    Ok(r.values()
        .iter()
        .map(|&ri| {
            let weights = responsibilities(ri, &views, vz);
            weights
                .iter()
                .zip(&views)
                .map(|(&w, view)| w * conditional_moments(ri, view, vz).0)
                .sum()
        })
        .collect())
}

/// Estimator given the true label of every index: each coordinate uses
/// the Wiener filter of its own component; atom coordinates are set to
/// the atom location exactly.
pub fn genie_wiener(
    r: &ChannelOutput,
    labels: &[u32],
    prior: &Prior,
    noise: &NoiseModel,
) -> Result<Vec<f64>> {
    if r.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: r.len(),
            right: labels.len(),
        });
    }
    let views = prior.component_views();
    if let Some(&bad) = labels.iter().find(|&&l| (l as usize) >= views.len()) {
        return Err(Error::InvalidArgument(format!(
            "label {bad} out of range for {} components",
            views.len()
        )));
    }
    let vz = noise.variance_z();
    Ok(r.values()
        .iter()
        .zip(labels)
        .map(|(&ri, &l)| {
            let view = &views[l as usize];
            if view.variance == 0.0 {
                // Point-mass component: the signal value is known.
                view.mean
            } else if vz == 0.0 {
                ri
            } else {
                let gain = view.variance / (view.variance + vz);
                gain * (ri - view.mean) + view.mean
            }
        })
        .collect())
}

/// The no-denoising baseline.
pub fn identity(r: &ChannelOutput) -> Vec<f64> {
    r.values().to_vec()
}
