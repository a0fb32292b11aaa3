//! Shared numerical helpers: Gaussian densities and compensated summation.

use std::f64::consts::PI;

/// log of the normal density with the given mean and variance.
/// Requires `variance > 0`; callers guard this.
pub fn normal_logpdf(x: f64, mean: f64, variance: f64) -> f64 {
    let d = x - mean;
    -0.5 * (2.0 * PI * variance).ln() - d * d / (2.0 * variance)
}

/// Normal density with the given mean and variance.
pub fn normal_pdf(x: f64, mean: f64, variance: f64) -> f64 {
    normal_logpdf(x, mean, variance).exp()
}

/// Neumaier compensated accumulator. Summation error stays O(ε)
/// independent of the number of terms, so fixed-order reductions are
/// reproducible to the last bit regardless of how trials were scheduled.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of a slice.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut acc = NeumaierSum::new();
    for &v in values {
        acc.add(v);
    }
    acc.total()
}

/// Sample mean.
pub fn mean(values: &[f64]) -> f64 {
    compensated_sum(values) / values.len() as f64
}

/// Sample mean and standard error of the mean (unbiased variance).
/// The standard error is 0 when fewer than two values are given.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let m = mean(values);
    if n < 2 {
        return (m, 0.0);
    }
    let mut acc = NeumaierSum::new();
    for &v in values {
        let d = v - m;
        acc.add(d * d);
    }
    let var = acc.total() / (n - 1) as f64;
    (m, (var / n as f64).sqrt())
}

/// Unbiased sample variance (two-pass, compensated).
pub fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let mut acc = NeumaierSum::new();
    for &v in values {
        let d = v - m;
        acc.add(d * d);
    }
    acc.total() / (n - 1) as f64
}

/// Unbiased sample covariance of two paired slices.
pub fn sample_covariance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    if n < 2 {
        return 0.0;
    }
    let ma = mean(a);
    let mb = mean(b);
    let mut acc = NeumaierSum::new();
    for (&x, &y) in a.iter().zip(b) {
        acc.add((x - ma) * (y - mb));
    }
    acc.total() / (n - 1) as f64
}
