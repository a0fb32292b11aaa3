//! Campaign drivers.
//!
//! Trials run in parallel; every (n, trial) pair derives its own seed, so
//! the records are identical for any worker count. Reduction happens
//! afterwards, sequentially, in (n, trial) order.

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::awgn;
use crate::estimators::EstimatorKind;
use crate::metrics::ErrorReport;
use crate::oracle::{min_linf_oracle, OracleConfig};
use crate::priors::{sample_bg, sample_gm, LabeledSignal, Prior};
use crate::rng::{derive_seed, substream, StreamPurpose};
use crate::stats::mean_and_se;
use crate::theory::{gnedenko_normalizer, typical_set_membership};
use crate::{Error, Result};

use rand_distr::{Distribution, Normal};

use super::config::{CampaignPlan, ExperimentConfig, Lemma1Config, OracleCampaignConfig};
use super::records::{Lemma1Record, OracleTrialRecord, TrialRecord};
use super::summary::{summarize, ExperimentSummary};

/// Records plus their aggregation.
#[derive(Clone, Debug)]
pub struct CampaignOutput {
    pub records: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

fn sample_prior(prior: &Prior, n: usize, seed: u64) -> Result<LabeledSignal> {
    match prior {
        Prior::Bg(bg) => sample_bg(bg, n, seed),
        Prior::Gm(gm) => sample_gm(gm, n, seed),
    }
}

fn run_trial(plan: &CampaignPlan, n_index: usize, trial: usize) -> Result<Vec<TrialRecord>> {
    let n = plan.n_values[n_index];
    let trial_seed = derive_seed(plan.seed, &[n_index as u64, trial as u64]);
    let signal = sample_prior(&plan.prior, n, trial_seed)?;
    let observed = awgn(signal.values(), &plan.noise, trial_seed)?;
    let in_typical_set =
        typical_set_membership(signal.labels(), &plan.prior, &plan.epsilons[n_index])?;
    let normalizer = (n as f64).ln().sqrt();

    plan.specs
        .iter()
        .map(|spec| {
            let estimate = spec.apply(&observed, signal.labels())?;
            let report = ErrorReport::new(signal.values(), &estimate, signal.labels())?;
            Ok(TrialRecord {
                n,
                trial_index: trial,
                estimator: spec.kind(),
                linf: report.linf,
                l2: report.l2,
                argmax_index: report.argmax_index,
                argmax_label: report.argmax_label,
                normalized_linf: report.linf / normalizer,
                in_typical_set,
            })
        })
        .collect()
}

/// Run the full campaign described by `cfg`: sample, pass through the
/// channel, run every estimator, record metrics, aggregate.
pub fn run_campaign(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let plan = cfg.plan()?;
    let tasks: Vec<(usize, usize)> = (0..plan.n_values.len())
        .flat_map(|n_index| (0..plan.trials).map(move |trial| (n_index, trial)))
        .collect();

    let per_task: Vec<Result<Vec<TrialRecord>>> = tasks
        .par_iter()
        .map(|&(n_index, trial)| run_trial(&plan, n_index, trial))
        .collect();

    let mut records = Vec::with_capacity(tasks.len() * plan.specs.len());
    for result in per_task {
        records.extend(result?);
    }
    let summary = summarize(cfg, &plan, &records)?;
    Ok(CampaignOutput { records, summary })
}

/// `ratio` is `simulate` with the estimator set checked up front: the
/// Wiener-to-genie ratio needs both sides present.
pub fn ratio_campaign(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let has_wiener = cfg
        .estimators
        .iter()
        .any(|k| matches!(k, EstimatorKind::WienerBg | EstimatorKind::WienerGm));
    let has_genie = cfg.estimators.contains(&EstimatorKind::GenieWiener);
    if !(has_wiener && has_genie) {
        return Err(Error::Config(
            "ratio campaigns need genie_wiener and a wiener estimator in `estimators`".into(),
        ));
    }
    run_campaign(cfg)
}

/// Per-n mean and standard error of the normalized-maximum statistic.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Cell {
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    pub se: f64,
}

#[derive(Clone, Debug)]
pub struct Lemma1Output {
    pub records: Vec<Lemma1Record>,
    pub cells: Vec<Lemma1Cell>,
}

/// For each n: sample i.i.d. Normal(mean, variance) sequences and record
/// max|u_i| / √(2·variance·ln n).
pub fn lemma1_campaign(cfg: &Lemma1Config) -> Result<Lemma1Output> {
    cfg.validate()?;
    let tasks: Vec<(usize, usize)> = (0..cfg.n_values.len())
        .flat_map(|n_index| (0..cfg.trials).map(move |trial| (n_index, trial)))
        .collect();

    let std_dev = cfg.variance.sqrt();
    let records: Vec<Result<Lemma1Record>> = tasks
        .par_iter()
        .map(|&(n_index, trial)| {
            let n = cfg.n_values[n_index];
            let normalizer = gnedenko_normalizer(n, cfg.variance)?;
            let seed = derive_seed(cfg.seed, &[n_index as u64, trial as u64]);
            let mut rng = substream(seed, &[], StreamPurpose::MaxStat);
            let normal = Normal::new(cfg.mean, std_dev).expect("validated variance");
            let mut max_abs = 0.0f64;
            for _ in 0..n {
                let value: f64 = normal.sample(&mut rng);
                let magnitude = value.abs();
                if magnitude > max_abs {
                    max_abs = magnitude;
                }
            }
            Ok(Lemma1Record {
                n,
                trial_index: trial,
                statistic: max_abs / normalizer,
            })
        })
        .collect();

    let records: Vec<Lemma1Record> = records.into_iter().collect::<Result<_>>()?;
    let cells = cfg
        .n_values
        .iter()
        .enumerate()
        .map(|(n_index, &n)| {
            let stats: Vec<f64> = records[n_index * cfg.trials..(n_index + 1) * cfg.trials]
                .iter()
                .map(|r| r.statistic)
                .collect();
            let (mean, se) = mean_and_se(&stats);
            Lemma1Cell {
                n,
                trials: cfg.trials,
                mean,
                se,
            }
        })
        .collect();

    Ok(Lemma1Output { records, cells })
}

/// Per-estimator worst-case risk in an oracle comparison.
#[derive(Clone, Debug, Serialize)]
pub struct OracleCell {
    pub estimator: String,
    pub trials: usize,
    pub linf_mean: f64,
    pub linf_se: f64,
}

#[derive(Clone, Debug)]
pub struct OracleComparison {
    pub records: Vec<OracleTrialRecord>,
    pub cells: Vec<OracleCell>,
}

/// Small-N comparison: the sampled min-ℓ∞ oracle against the matching
/// Wiener filter and the posterior mean on the same trials.
pub fn oracle_campaign(cfg: &OracleCampaignConfig) -> Result<OracleComparison> {
    cfg.validate()?;
    let prior = cfg.prior.build()?;
    let noise = crate::channel::NoiseModel::new(cfg.noise_variance)?;
    let wiener_kind = match &prior {
        Prior::Bg(_) => EstimatorKind::WienerBg,
        Prior::Gm(_) => EstimatorKind::WienerGm,
    };
    let estimator_names = ["oracle", wiener_kind.name(), "posterior_mean"];

    let per_trial: Vec<Result<[f64; 3]>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let trial_seed = derive_seed(cfg.seed, &[trial as u64]);
            let signal = sample_prior(&prior, cfg.n, trial_seed)?;
            let observed = awgn(signal.values(), &noise, trial_seed)?;

            let oracle_cfg = OracleConfig {
                posterior_samples: cfg.posterior_samples,
                iterations: cfg.iterations,
                step_scale: cfg.step_scale,
                seed: trial_seed,
            };
            let oracle_estimate = min_linf_oracle(&observed, &prior, &noise, &oracle_cfg)?;
            let wiener_estimate = match &prior {
                Prior::Bg(bg) => crate::estimators::wiener_bg(&observed, bg, &noise),
                Prior::Gm(gm) => crate::estimators::wiener_gm(&observed, gm, &noise),
            };
            let pm_estimate = crate::estimators::posterior_mean(&observed, &prior, &noise)?;

            let linf = |estimate: &[f64]| crate::metrics::linf_error(signal.values(), estimate);
            Ok([
                linf(&oracle_estimate)?,
                linf(&wiener_estimate)?,
                linf(&pm_estimate)?,
            ])
        })
        .collect();

    let mut records = Vec::with_capacity(cfg.trials * 3);
    let mut columns: [Vec<f64>; 3] = [
        Vec::with_capacity(cfg.trials),
        Vec::with_capacity(cfg.trials),
        Vec::with_capacity(cfg.trials),
    ];
    for (trial, result) in per_trial.into_iter().enumerate() {
        let errors = result?;
        for (slot, &linf) in errors.iter().enumerate() {
            records.push(OracleTrialRecord {
                trial_index: trial,
                estimator: estimator_names[slot].to_string(),
                linf,
            });
            columns[slot].push(linf);
        }
    }
    let cells = estimator_names
        .iter()
        .zip(&columns)
        .map(|(name, linfs)| {
            let (linf_mean, linf_se) = mean_and_se(linfs);
            OracleCell {
                estimator: name.to_string(),
                trials: cfg.trials,
                linf_mean,
                linf_se,
            }
        })
        .collect();

    Ok(OracleComparison { records, cells })
}
