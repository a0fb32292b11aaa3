//! Input-signal distributions: Gaussian mixtures and the Bernoulli-Gaussian
//! special case, with per-index component labels retained at sampling time.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::rng::{substream, StreamPurpose};
use crate::stats::normal_pdf;
use crate::{Error, Result};

/// One Gaussian component of a mixture: probability, mean, variance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianComponent {
    weight: f64,
    mean: f64,
    variance: f64,
}

impl GaussianComponent {
    /// Weight must lie in (0, 1]; weight 1 is only reachable in a
    /// single-component mixture because weights must sum to one.
    pub fn new(weight: f64, mean: f64, variance: f64) -> Result<Self> {
        if !(weight > 0.0 && weight <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "component weight must be in (0, 1], got {weight}"
            )));
        }
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "component variance must be positive and finite, got {variance}"
            )));
        }
        if !mean.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "component mean must be finite, got {mean}"
            )));
        }
        Ok(Self {
            weight,
            mean,
            variance,
        })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }
}

/// An i.i.d. Gaussian mixture source with K ≥ 1 components.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianMixturePrior {
    components: Vec<GaussianComponent>,
}

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

impl GaussianMixturePrior {
    pub fn new(components: Vec<GaussianComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "mixture needs at least one component".into(),
            ));
        }
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "component weights must sum to 1 (got {total})"
            )));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[GaussianComponent] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// A Gaussian with probability `s`, and a point mass at zero otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernoulliGaussianPrior {
    s: f64,
    mean_x: f64,
    variance_x: f64,
}

impl BernoulliGaussianPrior {
    /// `s` is the probability of the Gaussian part and must lie strictly
    /// in (0, 1); the degenerate ends are the pure-atom and pure-Gaussian
    /// sources, expressible as mixtures instead.
    pub fn new(s: f64, mean_x: f64, variance_x: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "sparsity s must be in (0, 1), got {s}"
            )));
        }
        if !(variance_x > 0.0 && variance_x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "variance_x must be positive and finite, got {variance_x}"
            )));
        }
        if !mean_x.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "mean_x must be finite, got {mean_x}"
            )));
        }
        Ok(Self {
            s,
            mean_x,
            variance_x,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn mean_x(&self) -> f64 {
        self.mean_x
    }

    pub fn variance_x(&self) -> f64 {
        self.variance_x
    }
}

/// Either supported input distribution. Estimators and campaigns are
/// generic over this.
#[derive(Clone, Debug, PartialEq)]
pub enum Prior {
    Bg(BernoulliGaussianPrior),
    Gm(GaussianMixturePrior),
}

/// A per-label view of a prior component. For the Bernoulli-Gaussian
/// prior, label 0 is the atom at zero (weight 1−s, variance 0) and
/// label 1 is the Gaussian part, matching the labels that sampling emits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentView {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

impl Prior {
    pub fn component_count(&self) -> usize {
        match self {
            Prior::Bg(_) => 2,
            Prior::Gm(gm) => gm.component_count(),
        }
    }

    /// Components in label order.
    pub fn component_views(&self) -> Vec<ComponentView> {
        match self {
            Prior::Bg(bg) => vec![
                ComponentView {
                    weight: 1.0 - bg.s,
                    mean: 0.0,
                    variance: 0.0,
                },
                ComponentView {
                    weight: bg.s,
                    mean: bg.mean_x,
                    variance: bg.variance_x,
                },
            ],
            Prior::Gm(gm) => gm
                .components
                .iter()
                .map(|c| ComponentView {
                    weight: c.weight,
                    mean: c.mean,
                    variance: c.variance,
                })
                .collect(),
        }
    }

    /// Label of the component with the largest variance (for the
    /// Bernoulli-Gaussian prior this is the Gaussian part). Ties break to
    /// the lowest label.
    pub fn max_variance_label(&self) -> u32 {
        match self {
            Prior::Bg(_) => 1,
            Prior::Gm(gm) => largest_variance_component(gm) as u32,
        }
    }
}

/// A sampled signal along with the component label of every index.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSignal {
    values: Vec<f64>,
    labels: Vec<u32>,
}

impl LabeledSignal {
    /// Values and labels must have equal nonzero length and every label
    /// must be a valid component index for `component_count`.
    pub fn new(values: Vec<f64>, labels: Vec<u32>, component_count: usize) -> Result<Self> {
        if values.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| (l as usize) >= component_count) {
            return Err(Error::InvalidArgument(format!(
                "label {bad} out of range for {component_count} components"
            )));
        }
        Ok(Self { values, labels })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Sample `n` Bernoulli-Gaussian values. Each index independently is
/// Gaussian with probability `s` (label 1) or exactly zero (label 0).
/// Deterministic given the seed.
pub fn sample_bg(prior: &BernoulliGaussianPrior, n: usize, seed: u64) -> Result<LabeledSignal> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be >= 1".into()));
    }
    let mut rng = substream(seed, &[], StreamPurpose::Signal);
    let normal =
        Normal::new(prior.mean_x, prior.variance_x.sqrt()).expect("validated variance is positive");

    let mut values = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        if rng.random::<f64>() < prior.s {
            values.push(normal.sample(&mut rng));
            labels.push(1);
        } else {
            values.push(0.0);
            labels.push(0);
        }
    }
    Ok(LabeledSignal { values, labels })
}

/// Sample `n` Gaussian-mixture values with their component labels.
/// Deterministic given the seed.
pub fn sample_gm(prior: &GaussianMixturePrior, n: usize, seed: u64) -> Result<LabeledSignal> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be >= 1".into()));
    }
    let mut rng = substream(seed, &[], StreamPurpose::Signal);
    let normals: Vec<Normal<f64>> = prior
        .components
        .iter()
        .map(|c| Normal::new(c.mean, c.variance.sqrt()).expect("validated variance is positive"))
        .collect();

    let mut values = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let mut k = prior.components.len() - 1;
        let mut cumulative = 0.0;
        for (idx, c) in prior.components.iter().enumerate() {
            cumulative += c.weight;
            if u < cumulative {
                k = idx;
                break;
            }
        }
        values.push(normals[k].sample(&mut rng));
        labels.push(k as u32);
    }
    Ok(LabeledSignal { values, labels })
}

/// Mixture density at `x`.
pub fn pdf_gm(prior: &GaussianMixturePrior, x: f64) -> f64 {
    prior
        .components
        .iter()
        .map(|c| c.weight * normal_pdf(x, c.mean, c.variance))
        .sum()
}

/// Index of a maximal-variance component; ties break to the lowest index.
pub fn largest_variance_component(prior: &GaussianMixturePrior) -> usize {
    let mut best = 0;
    for (idx, c) in prior.components.iter().enumerate().skip(1) {
        if c.variance > prior.components[best].variance {
            best = idx;
        }
    }
    best
}
