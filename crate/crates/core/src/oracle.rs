//! Small-dimension numerical approximation of the estimator minimizing
//! the expected worst-case error.
//!
//! The target E[max_i |x̂_i − x_i| given r] has no closed form for mixture
//! priors. This module approximates its minimizer by sample-average
//! approximation: draw a fixed set of exact posterior samples, then run
//! subgradient descent on the (convex) sampled objective, returning the
//! iterate with the lowest sampled objective. The sample set is fixed
//! across iterations, so the inner problem is deterministic and the
//! best-iterate value is non-increasing in the iteration budget.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::channel::{ChannelOutput, NoiseModel};
use crate::estimators::{conditional_moments, posterior_mean, responsibilities};
use crate::priors::Prior;
use crate::rng::{substream, StreamPurpose};
use crate::{Error, Result};

/// The oracle is a small-instance certification tool only; larger
/// dimensions are out of its design envelope.
pub const MAX_ORACLE_DIM: usize = 64;

/// Tuning knobs for the sampled-objective descent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// Number of posterior samples in the sample-average objective.
    pub posterior_samples: usize,
    /// Subgradient descent iterations.
    pub iterations: usize,
    /// Step size at iteration t is `step_scale / sqrt(t)`.
    pub step_scale: f64,
    /// Seed for the posterior sample set.
    pub seed: u64,
}

impl OracleConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            posterior_samples: 4096,
            iterations: 2000,
            step_scale: 0.5,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.posterior_samples < 100 {
            return Err(Error::InvalidArgument(format!(
                "posterior_samples must be >= 100, got {}",
                self.posterior_samples
            )));
        }
        if self.iterations < 1 {
            return Err(Error::InvalidArgument("iterations must be >= 1".into()));
        }
        if !(self.step_scale > 0.0 && self.step_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step_scale must be positive, got {}",
                self.step_scale
            )));
        }
        Ok(())
    }
}

/// Draw `m` i.i.d. samples from the exact componentwise posterior of the
/// signal given `r`. Coordinate `i` consumes its own substream keyed by
/// `i`, so samples at one coordinate do not depend on the others.
/// Point-mass components yield their location exactly.
pub fn posterior_sample(
    r: &ChannelOutput,
    prior: &Prior,
    noise: &NoiseModel,
    m: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if noise.is_noiseless() {
        return Err(Error::InvalidArgument(
            "posterior sampling requires positive noise variance".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if r.is_empty() {
        return Err(Error::InvalidArgument(
            "observation must be nonempty".into(),
        ));
    }

    let vz = noise.variance_z();
    let views = prior.component_views();
    let n = r.len();
    let mut samples = vec![vec![0.0f64; n]; m];

    for (i, &ri) in r.values().iter().enumerate() {
        let mut rng = substream(seed, &[i as u64], StreamPurpose::Posterior);
        let weights = responsibilities(ri, &views, vz);
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in &weights {
            acc += w;
            cumulative.push(acc);
        }
        let moments: Vec<(f64, f64)> = views
            .iter()
            .map(|view| conditional_moments(ri, view, vz))
            .collect();
        let normals: Vec<Option<Normal<f64>>> = moments
            .iter()
            .map(|&(mean, var)| {
                (var > 0.0).then(|| Normal::new(mean, var.sqrt()).expect("positive variance"))
            })
            .collect();

        for row in samples.iter_mut() {
            let u: f64 = rng.random();
            let k = cumulative
                .iter()
                .position(|&c| u < c)
                .unwrap_or(weights.len() - 1);
            row[i] = match &normals[k] {
                Some(normal) => normal.sample(&mut rng),
                None => moments[k].0,
            };
        }
    }
    Ok(samples)
}

/// Average over the sample set of the worst-coordinate absolute error.
pub fn sampled_linf_objective(point: &[f64], samples: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for sample in samples {
        let mut worst = 0.0f64;
        for (&p, &s) in point.iter().zip(sample) {
            let d = (p - s).abs();
            if d > worst {
                worst = d;
            }
        }
        total += worst;
    }
    total / samples.len() as f64
}

/// One pass: the sampled objective at `point` and a subgradient. Each
/// sample contributes sign(point_j − sample_j) at its worst coordinate j
/// (lowest index on ties).
fn objective_and_subgradient(point: &[f64], samples: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let mut grad = vec![0.0f64; point.len()];
    let mut total = 0.0;
    for sample in samples {
        let mut worst = (point[0] - sample[0]).abs();
        let mut arg = 0usize;
        for i in 1..point.len() {
            let d = (point[i] - sample[i]).abs();
            if d > worst {
                worst = d;
                arg = i;
            }
        }
        total += worst;
        let diff = point[arg] - sample[arg];
        if diff > 0.0 {
            grad[arg] += 1.0;
        } else if diff < 0.0 {
            grad[arg] -= 1.0;
        }
    }
    let m = samples.len() as f64;
    for g in &mut grad {
        *g /= m;
    }
    (total / m, grad)
}

/// Subgradient descent on the sampled objective from `initial`, returning
/// the iterate with the lowest sampled objective (the initial point
/// included). Deterministic given the sample set.
pub fn min_linf_over_samples(
    initial: &[f64],
    samples: &[Vec<f64>],
    iterations: usize,
    step_scale: f64,
) -> Vec<f64> {
    let mut x = initial.to_vec();
    let mut best = x.clone();
    let mut best_objective = f64::INFINITY;

    for t in 1..=iterations {
        let (objective, grad) = objective_and_subgradient(&x, samples);
        if objective < best_objective {
            best_objective = objective;
            best.copy_from_slice(&x);
        }
        let step = step_scale / (t as f64).sqrt();
        for (xi, gi) in x.iter_mut().zip(&grad) {
            *xi -= step * gi;
        }
    }
    if sampled_linf_objective(&x, samples) < best_objective {
        best = x;
    }
    best
}

/// Approximate minimizer of the expected worst-case error at `r`:
/// exact posterior samples plus subgradient descent initialized at the
/// posterior mean. Refuses dimensions above [`MAX_ORACLE_DIM`].
pub fn min_linf_oracle(
    r: &ChannelOutput,
    prior: &Prior,
    noise: &NoiseModel,
    cfg: &OracleConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    if r.len() > MAX_ORACLE_DIM {
        return Err(Error::InvalidArgument(format!(
            "oracle dimension {} exceeds the small-instance limit {}",
            r.len(),
            MAX_ORACLE_DIM
        )));
    }
    let samples = posterior_sample(r, prior, noise, cfg.posterior_samples, cfg.seed)?;
    let initial = posterior_mean(r, prior, noise)?;
    Ok(min_linf_over_samples(
        &initial,
        &samples,
        cfg.iterations,
        cfg.step_scale,
    ))
}
