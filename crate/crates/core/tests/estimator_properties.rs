//! Monte Carlo risk orderings between estimators, and the quadrature
//! check on the posterior mean.

mod common;

use common::{quadrature_posterior_mean, QuadComponent};
use wiener_linf::channel::{awgn, ChannelOutput, NoiseModel};
use wiener_linf::estimators::{posterior_mean, wiener_bg, wiener_gm, EstimatorKind};
use wiener_linf::experiments::{run_campaign, EpsilonSchedule, ExperimentConfig, PriorConfig};
use wiener_linf::metrics::{l2_error, linf_error};
use wiener_linf::priors::{
    sample_gm, BernoulliGaussianPrior, GaussianComponent, GaussianMixturePrior, Prior,
};
use wiener_linf::rng::derive_seed;
use wiener_linf::stats::mean_and_se;

#[test]
fn posterior_mean_matches_quadrature_oracle() {
    // BG s=0.5, μx=0, σx²=1, σz²=1 at r=1. Frozen quadrature value 0.2379.
    let prior = Prior::Bg(BernoulliGaussianPrior::new(0.5, 0.0, 1.0).unwrap());
    let noise = NoiseModel::new(1.0).unwrap();
    let got = posterior_mean(&ChannelOutput::new(vec![1.0]), &prior, &noise).unwrap()[0];

    let quad_components = [
        QuadComponent {
            weight: 0.5,
            mean: 0.0,
            variance: 0.0,
        },
        QuadComponent {
            weight: 0.5,
            mean: 0.0,
            variance: 1.0,
        },
    ];
    let oracle = quadrature_posterior_mean(&quad_components, 1.0, 1.0);
    assert!((got - oracle).abs() < 1e-6, "{got} vs quadrature {oracle}");
    assert!((got - 0.2379).abs() < 1e-4, "{got} vs frozen 0.2379");

    // A mixture case away from any symmetry.
    let gm = Prior::Gm(
        GaussianMixturePrior::new(vec![
            GaussianComponent::new(0.7, -1.0, 0.5).unwrap(),
            GaussianComponent::new(0.3, 2.0, 2.0).unwrap(),
        ])
        .unwrap(),
    );
    let got = posterior_mean(&ChannelOutput::new(vec![0.8]), &gm, &noise).unwrap()[0];
    let quad_components = [
        QuadComponent {
            weight: 0.7,
            mean: -1.0,
            variance: 0.5,
        },
        QuadComponent {
            weight: 0.3,
            mean: 2.0,
            variance: 2.0,
        },
    ];
    let oracle = quadrature_posterior_mean(&quad_components, 0.8, 1.0);
    assert!((got - oracle).abs() < 1e-6, "{got} vs quadrature {oracle}");
}

#[test]
fn posterior_mean_l2_risk_beats_wiener_gm() {
    let priors = [
        GaussianMixturePrior::new(vec![
            GaussianComponent::new(0.5, 0.0, 1.0).unwrap(),
            GaussianComponent::new(0.5, 3.0, 0.25).unwrap(),
        ])
        .unwrap(),
        GaussianMixturePrior::new(vec![
            GaussianComponent::new(0.8, -1.0, 0.04).unwrap(),
            GaussianComponent::new(0.2, 2.0, 2.0).unwrap(),
        ])
        .unwrap(),
        GaussianMixturePrior::new(vec![
            GaussianComponent::new(0.25, -2.0, 0.5).unwrap(),
            GaussianComponent::new(0.5, 0.0, 1.5).unwrap(),
            GaussianComponent::new(0.25, 4.0, 0.1).unwrap(),
        ])
        .unwrap(),
    ];
    let noise = NoiseModel::new(1.0).unwrap();
    let n = 2048;
    let trials = 50;

    for (which, gm) in priors.iter().enumerate() {
        let prior = Prior::Gm(gm.clone());
        let mut differences = Vec::with_capacity(trials);
        for trial in 0..trials {
            let seed = derive_seed(424242 + which as u64, &[trial as u64]);
            let signal = sample_gm(gm, n, seed).unwrap();
            let observed = awgn(signal.values(), &noise, seed).unwrap();
            let pm = posterior_mean(&observed, &prior, &noise).unwrap();
            let wf = wiener_gm(&observed, gm, &noise);
            let pm_l2 = l2_error(signal.values(), &pm).unwrap();
            let wf_l2 = l2_error(signal.values(), &wf).unwrap();
            differences.push(pm_l2 - wf_l2);
        }
        let (mean_diff, se) = mean_and_se(&differences);
        assert!(
            mean_diff <= 2.0 * se,
            "prior {which}: posterior-mean l2 risk not within 2 SE below wiener_gm: diff {mean_diff} se {se}"
        );
    }
}

#[test]
fn genie_linf_risk_is_no_worse_than_wiener_gm() {
    let cfg = ExperimentConfig {
        prior: PriorConfig::Gm {
            components: vec![
                wiener_linf::experiments::ComponentConfig {
                    weight: 1.0 / 3.0,
                    mean: 0.0,
                    variance: 1.0,
                },
                wiener_linf::experiments::ComponentConfig {
                    weight: 1.0 / 3.0,
                    mean: 0.0,
                    variance: 0.25,
                },
                wiener_linf::experiments::ComponentConfig {
                    weight: 1.0 / 3.0,
                    mean: 0.0,
                    variance: 0.04,
                },
            ],
        },
        noise_variance: 1.0,
        estimators: vec![EstimatorKind::WienerGm, EstimatorKind::GenieWiener],
        n_values: vec![10_000],
        trials: 100,
        seed: 31415,
        epsilon_schedule: EpsilonSchedule::default(),
        output_path: None,
        allow_large: false,
    };
    let output = run_campaign(&cfg).unwrap();
    let wiener: Vec<f64> = output
        .records
        .iter()
        .filter(|r| r.estimator == EstimatorKind::WienerGm)
        .map(|r| r.linf)
        .collect();
    let genie: Vec<f64> = output
        .records
        .iter()
        .filter(|r| r.estimator == EstimatorKind::GenieWiener)
        .map(|r| r.linf)
        .collect();
    let differences: Vec<f64> = genie.iter().zip(&wiener).map(|(g, w)| g - w).collect();
    let (mean_diff, se) = mean_and_se(&differences);
    assert!(
        mean_diff <= 2.0 * se,
        "genie linf risk above wiener_gm: diff {mean_diff} se {se}"
    );
}

#[test]
fn identity_linf_risk_clearly_exceeds_wiener_bg() {
    let prior = BernoulliGaussianPrior::new(0.3, 0.0, 1.0).unwrap();
    let noise = NoiseModel::new(1.0).unwrap();
    let n = 10_000;
    let trials = 100;

    let mut differences = Vec::with_capacity(trials);
    for trial in 0..trials {
        let seed = derive_seed(2718, &[trial as u64]);
        let signal = wiener_linf::priors::sample_bg(&prior, n, seed).unwrap();
        let observed = awgn(signal.values(), &noise, seed).unwrap();
        let id_linf = linf_error(signal.values(), observed.values()).unwrap();
        let wf = wiener_bg(&observed, &prior, &noise);
        let wf_linf = linf_error(signal.values(), &wf).unwrap();
        differences.push(id_linf - wf_linf);
    }
    let (mean_diff, se) = mean_and_se(&differences);
    assert!(
        mean_diff >= 2.0 * se,
        "identity not clearly worse: diff {mean_diff} se {se}"
    );
    assert!(mean_diff > 0.0);
}
