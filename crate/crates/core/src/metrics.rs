//! Error functionals and argmax-localization diagnostics.

use crate::{Error, Result};

/// Per-trial error summary: the worst-case and Euclidean errors, plus
/// where the worst-case error occurred.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorReport {
    pub linf: f64,
    pub l2: f64,
    pub argmax_index: usize,
    pub argmax_label: u32,
}

impl ErrorReport {
    /// Compute all fields from a signal, its estimate, and the labels.
    pub fn new(x: &[f64], xhat: &[f64], labels: &[u32]) -> Result<Self> {
        let (argmax_index, argmax_label) = argmax_error(x, xhat, labels)?;
        // Same comparison pass as argmax_error, so linf is exactly the
        // error at argmax_index.
        let linf = (xhat[argmax_index] - x[argmax_index]).abs();
        let l2 = l2_error(x, xhat)?;
        Ok(Self {
            linf,
            l2,
            argmax_index,
            argmax_label,
        })
    }
}

fn check_lengths(x: &[f64], xhat: &[f64]) -> Result<()> {
    if x.len() != xhat.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: xhat.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::InvalidArgument(
            "error norms need at least one component".into(),
        ));
    }
    Ok(())
}

/// Maximum absolute componentwise difference.
pub fn linf_error(x: &[f64], xhat: &[f64]) -> Result<f64> {
    check_lengths(x, xhat)?;
    let mut max = 0.0f64;
    for (&a, &b) in x.iter().zip(xhat) {
        let d = (b - a).abs();
        if d > max {
            max = d;
        }
    }
    Ok(max)
}

/// Euclidean norm of the difference.
pub fn l2_error(x: &[f64], xhat: &[f64]) -> Result<f64> {
    check_lengths(x, xhat)?;
    let mut acc = crate::stats::NeumaierSum::new();
    for (&a, &b) in x.iter().zip(xhat) {
        let d = b - a;
        acc.add(d * d);
    }
    Ok(acc.total().sqrt())
}

/// Index attaining the maximum absolute error (ties break to the lowest
/// index) and the component label at that index.
pub fn argmax_error(x: &[f64], xhat: &[f64], labels: &[u32]) -> Result<(usize, u32)> {
    check_lengths(x, xhat)?;
    if labels.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: labels.len(),
        });
    }
    let mut best = 0usize;
    let mut max = (xhat[0] - x[0]).abs();
    for i in 1..x.len() {
        let d = (xhat[i] - x[i]).abs();
        if d > max {
            max = d;
            best = i;
        }
    }
    Ok((best, labels[best]))
}

/// Fraction of trials whose argmax label equals `target_label`, with a
/// binomial standard error.
pub fn localization_frequency(trials: &[ErrorReport], target_label: u32) -> Result<(f64, f64)> {
    if trials.is_empty() {
        return Err(Error::InvalidArgument(
            "localization frequency needs at least one trial".into(),
        ));
    }
    let hits = trials
        .iter()
        .filter(|t| t.argmax_label == target_label)
        .count();
    let n = trials.len() as f64;
    let p = hits as f64 / n;
    Ok((p, (p * (1.0 - p) / n).sqrt()))
}
