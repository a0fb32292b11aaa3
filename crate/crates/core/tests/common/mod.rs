//! Shared helpers for the integration suites: a Kolmogorov-Smirnov check
//! and quadrature oracles that are independent of the library's own
//! posterior code paths.

#![allow(dead_code)]

use statrs::distribution::{ContinuousCDF, Normal};

/// One-sample KS statistic against N(mean, variance), with the rejection
/// threshold at significance 1e-3 (asymptotic: sqrt(ln(2/α)/2)/sqrt(m)).
pub fn ks_against_normal(values: &[f64], mean: f64, variance: f64) -> (f64, f64) {
    let normal = Normal::new(mean, variance.sqrt()).unwrap();
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = sorted.len() as f64;
    let mut statistic = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let cdf = normal.cdf(x);
        let upper = (i as f64 + 1.0) / m - cdf;
        let lower = cdf - i as f64 / m;
        statistic = statistic.max(upper).max(lower);
    }
    let alpha: f64 = 1e-3;
    let threshold = ((2.0 / alpha).ln() / 2.0).sqrt() / m.sqrt();
    (statistic, threshold)
}

fn density(x: f64, mean: f64, variance: f64) -> f64 {
    let d = x - mean;
    (-d * d / (2.0 * variance)).exp() / (2.0 * std::f64::consts::PI * variance).sqrt()
}

/// A mixture component as seen by the quadrature oracles: weight, mean,
/// variance; variance 0 marks a point mass.
#[derive(Clone, Copy, Debug)]
pub struct QuadComponent {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

/// Posterior mean E[x | r] by brute-force trapezoidal quadrature over the
/// joint density, independent of the library's responsibility code.
pub fn quadrature_posterior_mean(components: &[QuadComponent], r: f64, variance_z: f64) -> f64 {
    let mut numerator = 0.0f64;
    let mut denominator = 0.0f64;

    let sigma_max = components
        .iter()
        .map(|c| (c.variance + variance_z).sqrt())
        .fold(variance_z.sqrt(), f64::max);
    let lo = components.iter().map(|c| c.mean).fold(r, f64::min) - 15.0 * sigma_max;
    let hi = components.iter().map(|c| c.mean).fold(r, f64::max) + 15.0 * sigma_max;
    let steps = 400_000usize;
    let h = (hi - lo) / steps as f64;

    for c in components {
        if c.variance == 0.0 {
            // Point mass: contributes its location with the channel
            // density evaluated there.
            let like = c.weight * density(r, c.mean, variance_z);
            numerator += like * c.mean;
            denominator += like;
            continue;
        }
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for i in 0..=steps {
            let x = lo + i as f64 * h;
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            let joint = density(x, c.mean, c.variance) * density(r, x, variance_z);
            num += w * x * joint;
            den += w * joint;
        }
        numerator += c.weight * num * h;
        denominator += c.weight * den * h;
    }
    numerator / denominator
}

/// Posterior probability of component `k` given `r`, by quadrature.
pub fn quadrature_responsibility(
    components: &[QuadComponent],
    k: usize,
    r: f64,
    variance_z: f64,
) -> f64 {
    let marginal = |c: &QuadComponent| -> f64 {
        if c.variance == 0.0 {
            return density(r, c.mean, variance_z);
        }
        let sigma = (c.variance + variance_z).sqrt();
        let lo = c.mean.min(r) - 15.0 * sigma;
        let hi = c.mean.max(r) + 15.0 * sigma;
        let steps = 400_000usize;
        let h = (hi - lo) / steps as f64;
        let mut acc = 0.0f64;
        for i in 0..=steps {
            let x = lo + i as f64 * h;
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            acc += w * density(x, c.mean, c.variance) * density(r, x, variance_z);
        }
        acc * h
    };
    let likes: Vec<f64> = components.iter().map(|c| c.weight * marginal(c)).collect();
    likes[k] / likes.iter().sum::<f64>()
}
