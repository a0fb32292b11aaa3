//! Closed-form predictions used to check the simulations: residual
//! ("error pattern") distributions of the Wiener filters per component,
//! extreme-value normalizers for Gaussian maxima, the asymptotic sup-norm
//! constant, and typical-set bounds on label frequencies.

use crate::channel::NoiseModel;
use crate::priors::{
    largest_variance_component, BernoulliGaussianPrior, GaussianMixturePrior, Prior,
};
use crate::{Error, Result};

/// Mean and variance of a Gaussian error pattern.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalParams {
    pub mean: f64,
    pub variance: f64,
}

/// Typical-set tolerance(s) and the associated probability defect δ, so
/// that label frequencies fall within ε of the weights with probability
/// greater than 1 − δ.
#[derive(Clone, Debug, PartialEq)]
pub struct TypicalSetSpec {
    pub epsilons: Vec<f64>,
    pub delta: f64,
}

impl TypicalSetSpec {
    /// Build the spec for a prior. The Bernoulli-Gaussian case takes a
    /// single ε (and is undefined at s = 0.5); the mixture case takes one
    /// ε per component.
    pub fn for_prior(prior: &Prior, epsilons: &[f64]) -> Result<Self> {
        let delta = match prior {
            Prior::Bg(bg) => {
                if epsilons.len() != 1 {
                    return Err(Error::LengthMismatch {
                        left: epsilons.len(),
                        right: 1,
                    });
                }
                typical_set_delta_bg(bg.s(), epsilons[0])?
            }
            Prior::Gm(gm) => {
                let weights: Vec<f64> = gm.components().iter().map(|c| c.weight()).collect();
                typical_set_delta_gm(&weights, epsilons)?
            }
        };
        Ok(Self {
            epsilons: epsilons.to_vec(),
            delta,
        })
    }
}

/// Residual distributions of the Bernoulli-Gaussian Wiener filter on the
/// Gaussian index set (first) and on the atom index set (second).
pub fn error_pattern_bg(
    prior: &BernoulliGaussianPrior,
    noise: &NoiseModel,
) -> (NormalParams, NormalParams) {
    let vx = prior.variance_x();
    let vz = noise.variance_z();
    let total = vx + vz;
    let gaussian_set = NormalParams {
        mean: 0.0,
        variance: vx * vz / total,
    };
    let atom_set = NormalParams {
        mean: vz * prior.mean_x() / total,
        variance: vx * vx * vz / (total * total),
    };
    (gaussian_set, atom_set)
}

/// Residual distribution of the mixture Wiener filter restricted to the
/// indices of component `k`. The filter is tuned to the largest-variance
/// component m, so the pattern is
/// N((σz²/(σm²+σz²))·(μm−μk), (σz⁴σk² + σm⁴σz²)/(σm²+σz²)²).
pub fn error_pattern_gm(
    prior: &GaussianMixturePrior,
    noise: &NoiseModel,
    k: usize,
) -> Result<NormalParams> {
    let components = prior.components();
    if k >= components.len() {
        return Err(Error::InvalidArgument(format!(
            "component index {k} out of range for K={}",
            components.len()
        )));
    }
    let m = largest_variance_component(prior);
    let vm = components[m].variance();
    let mu_m = components[m].mean();
    let vk = components[k].variance();
    let mu_k = components[k].mean();
    let vz = noise.variance_z();
    let total = vm + vz;

    Ok(NormalParams {
        mean: vz / total * (mu_m - mu_k),
        variance: (vz * vz * vk + vm * vm * vz) / (total * total),
    })
}

/// The scale at which the maximum of n i.i.d. Gaussian magnitudes
/// concentrates: √(2·variance·ln n).
pub fn gnedenko_normalizer(n: usize, variance: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "normalizer needs n >= 2, got {n}"
        )));
    }
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "normalizer needs positive variance, got {variance}"
        )));
    }
    Ok((2.0 * variance * (n as f64).ln()).sqrt())
}

/// Limit of E[‖x − x̂_W‖∞]/√(ln N): √(2·v) where v is the variance of the
/// dominant error pattern (the Gaussian set for Bernoulli-Gaussian input,
/// the largest-variance component for a mixture).
pub fn asymptotic_linf_constant(prior: &Prior, noise: &NoiseModel) -> f64 {
    let variance = match prior {
        Prior::Bg(bg) => error_pattern_bg(bg, noise).0.variance,
        Prior::Gm(gm) => {
            let m = largest_variance_component(gm);
            error_pattern_gm(gm, noise, m)
                .expect("m is in range")
                .variance
        }
    };
    (2.0 * variance).sqrt()
}

/// Probability defect δ = ε·|log2(s/(1−s))| of the Bernoulli-Gaussian
/// typical set. Undefined at s = 0.5.
pub fn typical_set_delta_bg(s: f64, epsilon: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "s must be in (0, 1), got {s}"
        )));
    }
    if s == 0.5 {
        return Err(Error::Domain(
            "typical-set delta is undefined at s = 0.5".into(),
        ));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(epsilon * (s / (1.0 - s)).log2().abs())
}

/// Probability defect δ = Σ_k ε_k·|log2(s_k)| of the mixture typical set.
pub fn typical_set_delta_gm(weights: &[f64], epsilons: &[f64]) -> Result<f64> {
    if weights.len() != epsilons.len() {
        return Err(Error::LengthMismatch {
            left: weights.len(),
            right: epsilons.len(),
        });
    }
    for &w in weights {
        if !(w > 0.0 && w <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "weights must be in (0, 1], got {w}"
            )));
        }
    }
    for &e in epsilons {
        if !e.is_finite() || e <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "epsilons must be positive, got {e}"
            )));
        }
    }
    Ok(weights
        .iter()
        .zip(epsilons)
        .map(|(&w, &e)| e * w.log2().abs())
        .sum())
}

/// Whether every component's empirical label frequency is within its ε of
/// the component weight. The Bernoulli-Gaussian case takes a single ε
/// applied to the Gaussian-set frequency; the complementary atom check is
/// algebraically identical.
pub fn typical_set_membership(labels: &[u32], prior: &Prior, epsilons: &[f64]) -> Result<bool> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument(
            "membership needs at least one label".into(),
        ));
    }
    let n = labels.len() as f64;
    match prior {
        Prior::Bg(bg) => {
            if epsilons.len() != 1 {
                return Err(Error::LengthMismatch {
                    left: epsilons.len(),
                    right: 1,
                });
            }
            let ones = labels.iter().filter(|&&l| l == 1).count() as f64;
            Ok((ones / n - bg.s()).abs() < epsilons[0])
        }
        Prior::Gm(gm) => {
            let k = gm.component_count();
            if epsilons.len() != k {
                return Err(Error::LengthMismatch {
                    left: epsilons.len(),
                    right: k,
                });
            }
            let mut counts = vec![0usize; k];
            for &l in labels {
                counts[l as usize] += 1;
            }
            Ok(gm
                .components()
                .iter()
                .zip(&counts)
                .zip(epsilons)
                .all(|((c, &count), &eps)| (count as f64 / n - c.weight()).abs() < eps))
        }
    }
}
