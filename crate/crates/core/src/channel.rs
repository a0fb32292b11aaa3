//! The parallel additive white Gaussian noise channel.

use rand_distr::{Distribution, Normal};

use crate::rng::{substream, StreamPurpose};
use crate::stats::normal_logpdf;
use crate::{Error, Result};

/// Channel noise level. Variance 0 is allowed and turns the channel into
/// an identity map; the log-likelihood is undefined there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    variance_z: f64,
}

impl NoiseModel {
    pub fn new(variance_z: f64) -> Result<Self> {
        if !(variance_z >= 0.0 && variance_z.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "noise variance must be finite and >= 0, got {variance_z}"
            )));
        }
        Ok(Self { variance_z })
    }

    pub fn variance_z(&self) -> f64 {
        self.variance_z
    }

    pub fn is_noiseless(&self) -> bool {
        self.variance_z == 0.0
    }
}

/// Channel output vector, same length as the input signal.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelOutput {
    values: Vec<f64>,
}

impl ChannelOutput {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// r = x + z with z i.i.d. N(0, variance_z). Deterministic given the
/// seed; variance 0 returns the input bit for bit.
pub fn awgn(x: &[f64], noise: &NoiseModel, seed: u64) -> Result<ChannelOutput> {
    if x.is_empty() {
        return Err(Error::InvalidArgument(
            "channel input must be nonempty".into(),
        ));
    }
    if noise.is_noiseless() {
        return Ok(ChannelOutput::new(x.to_vec()));
    }
    let mut rng = substream(seed, &[], StreamPurpose::Noise);
    let normal = Normal::new(0.0, noise.variance_z.sqrt()).expect("validated variance");
    let values = x.iter().map(|&xi| xi + normal.sample(&mut rng)).collect();
    Ok(ChannelOutput::new(values))
}

/// Log of the Gaussian channel density f(r_i | x_i). Undefined for a
/// noiseless channel.
pub fn channel_loglik(r_i: f64, x_i: f64, noise: &NoiseModel) -> Result<f64> {
    if noise.is_noiseless() {
        return Err(Error::InvalidArgument(
            "channel log-likelihood is degenerate at zero noise variance".into(),
        ));
    }
    Ok(normal_logpdf(r_i, x_i, noise.variance_z))
}
