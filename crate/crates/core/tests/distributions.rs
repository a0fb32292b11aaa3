//! Distributional checks on the samplers: conditional normality per
//! label, channel noise normality, and the binomial concentration that
//! underlies the typical set.

mod common;

use common::ks_against_normal;
use wiener_linf::channel::{awgn, NoiseModel};
use wiener_linf::priors::{
    sample_bg, sample_gm, BernoulliGaussianPrior, GaussianComponent, GaussianMixturePrior, Prior,
};
use wiener_linf::theory::{typical_set_delta_bg, typical_set_membership};

#[test]
fn bg_conditional_values_pass_ks() {
    let prior = BernoulliGaussianPrior::new(0.3, 0.5, 2.0).unwrap();
    let signal = sample_bg(&prior, 400_000, 31).unwrap();
    let gaussian_part: Vec<f64> = signal
        .values()
        .iter()
        .zip(signal.labels())
        .filter(|(_, &l)| l == 1)
        .map(|(&v, _)| v)
        .collect();
    assert!(gaussian_part.len() >= 100_000);
    let (stat, threshold) = ks_against_normal(&gaussian_part, 0.5, 2.0);
    assert!(stat < threshold, "KS {stat} >= threshold {threshold}");
}

#[test]
fn gm_conditional_values_pass_ks() {
    let prior = GaussianMixturePrior::new(vec![
        GaussianComponent::new(0.5, -1.0, 0.25).unwrap(),
        GaussianComponent::new(0.5, 2.0, 4.0).unwrap(),
    ])
    .unwrap();
    let signal = sample_gm(&prior, 200_000, 17).unwrap();
    for (k, component) in prior.components().iter().enumerate() {
        let values: Vec<f64> = signal
            .values()
            .iter()
            .zip(signal.labels())
            .filter(|(_, &l)| l as usize == k)
            .map(|(&v, _)| v)
            .collect();
        assert!(values.len() >= 90_000);
        let (stat, threshold) = ks_against_normal(&values, component.mean(), component.variance());
        assert!(
            stat < threshold,
            "component {k}: KS {stat} >= threshold {threshold}"
        );
    }
}

#[test]
fn awgn_residuals_pass_ks_pooled_over_trials() {
    let noise = NoiseModel::new(2.25).unwrap();
    let x = vec![1.5; 250_000];
    let mut residuals = Vec::with_capacity(1_000_000);
    for trial in 0..4u64 {
        let out = awgn(&x, &noise, 1000 + trial).unwrap();
        residuals.extend(out.values().iter().zip(&x).map(|(&r, &xi)| r - xi));
    }
    let (stat, threshold) = ks_against_normal(&residuals, 0.0, 2.25);
    assert!(stat < threshold, "KS {stat} >= threshold {threshold}");
}

#[test]
fn bg_label_frequencies_obey_typical_set_bound() {
    // Cross-module check: membership frequency exceeds 1 − δ with δ from
    // the closed-form typical-set defect.
    let s = 0.3;
    let epsilon = 0.01;
    let n = 100_000;
    let trials = 200;
    let prior = BernoulliGaussianPrior::new(s, 0.0, 1.0).unwrap();
    let delta = typical_set_delta_bg(s, epsilon).unwrap();

    let mut members = 0usize;
    for trial in 0..trials {
        let signal = sample_bg(&prior, n, 5000 + trial as u64).unwrap();
        if typical_set_membership(signal.labels(), &Prior::Bg(prior), &[epsilon]).unwrap() {
            members += 1;
        }
    }
    let frequency = members as f64 / trials as f64;
    assert!(
        frequency >= 1.0 - delta,
        "membership frequency {frequency} < 1 - {delta}"
    );
}
