//! Aggregation of trial records into the JSON summary.
//!
//! All reductions run in (n, trial) order over the already-ordered record
//! stream with compensated summation, so the summary is identical no
//! matter how many workers produced the records.

use serde::Serialize;

use crate::estimators::EstimatorKind;
use crate::stats::{mean, mean_and_se, sample_covariance, sample_variance};
use crate::{Error, Result};

use super::config::{CampaignPlan, ExperimentConfig};
use super::records::TrialRecord;

pub const SUMMARY_SCHEMA_VERSION: &str = "summary/v1";

/// Per-(n, estimator) statistics.
#[derive(Clone, Debug, Serialize)]
pub struct EstimatorCell {
    pub estimator: EstimatorKind,
    pub trials: usize,
    pub linf_mean: f64,
    pub linf_se: f64,
    pub normalized_linf_mean: f64,
    pub normalized_linf_se: f64,
    pub l2_mean: f64,
    /// Fraction of trials whose worst error sits in the largest-variance
    /// component, with its binomial standard error.
    pub localization_frequency: f64,
    pub localization_se: f64,
}

/// Statistics for one signal dimension.
#[derive(Clone, Debug, Serialize)]
pub struct PerNSummary {
    pub n: usize,
    pub epsilon: f64,
    pub typical_set_delta: Option<f64>,
    pub typical_set_frequency: f64,
    pub estimators: Vec<EstimatorCell>,
    /// Ratio of the Wiener mean worst-case error to the genie's, when
    /// both estimators ran; standard error by the delta method on the
    /// paired trial errors.
    pub wiener_to_genie_ratio: Option<f64>,
    pub wiener_to_genie_se: Option<f64>,
}

/// The JSON summary artifact: schema version, config echo, per-n cells.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentSummary {
    pub schema_version: String,
    pub config: ExperimentConfig,
    pub per_n: Vec<PerNSummary>,
}

/// Ratio of means of two paired samples with a delta-method standard
/// error. None when the denominator mean is zero.
pub fn ratio_of_means(numerator: &[f64], denominator: &[f64]) -> Option<(f64, f64)> {
    let trials = numerator.len();
    if trials == 0 || trials != denominator.len() {
        return None;
    }
    let mn = mean(numerator);
    let md = mean(denominator);
    if md == 0.0 {
        return None;
    }
    let ratio = mn / md;
    let t = trials as f64;
    let var_n = sample_variance(numerator) / t;
    let var_d = sample_variance(denominator) / t;
    let cov = sample_covariance(numerator, denominator) / t;
    let variance =
        var_n / (md * md) + mn * mn * var_d / (md * md * md * md) - 2.0 * mn * cov / (md * md * md);
    Some((ratio, variance.max(0.0).sqrt()))
}

pub(super) fn summarize(
    config: &ExperimentConfig,
    plan: &CampaignPlan,
    records: &[TrialRecord],
) -> Result<ExperimentSummary> {
    let estimator_count = plan.specs.len();
    let expected = plan.n_values.len() * plan.trials * estimator_count;
    if records.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "expected {expected} records, got {}",
            records.len()
        )));
    }
    let target_label = plan.prior.max_variance_label();

    let wiener_kind = plan
        .specs
        .iter()
        .map(|s| s.kind())
        .find(|k| matches!(k, EstimatorKind::WienerBg | EstimatorKind::WienerGm));
    let has_genie = plan
        .specs
        .iter()
        .any(|s| s.kind() == EstimatorKind::GenieWiener);

    let mut per_n = Vec::with_capacity(plan.n_values.len());
    for (n_index, &n) in plan.n_values.iter().enumerate() {
        let block = &records[n_index * plan.trials * estimator_count
            ..(n_index + 1) * plan.trials * estimator_count];

        let mut cells = Vec::with_capacity(estimator_count);
        let mut wiener_linfs = Vec::new();
        let mut genie_linfs = Vec::new();
        for (spec_index, spec) in plan.specs.iter().enumerate() {
            let rows: Vec<&TrialRecord> = block
                .iter()
                .skip(spec_index)
                .step_by(estimator_count)
                .collect();
            debug_assert_eq!(rows.len(), plan.trials);
            let linfs: Vec<f64> = rows.iter().map(|r| r.linf).collect();
            let normalized: Vec<f64> = rows.iter().map(|r| r.normalized_linf).collect();
            let l2s: Vec<f64> = rows.iter().map(|r| r.l2).collect();
            let hits = rows
                .iter()
                .filter(|r| r.argmax_label == target_label)
                .count();
            let p = hits as f64 / plan.trials as f64;
            let (linf_mean, linf_se) = mean_and_se(&linfs);
            let (normalized_linf_mean, normalized_linf_se) = mean_and_se(&normalized);
            cells.push(EstimatorCell {
                estimator: spec.kind(),
                trials: plan.trials,
                linf_mean,
                linf_se,
                normalized_linf_mean,
                normalized_linf_se,
                l2_mean: mean(&l2s),
                localization_frequency: p,
                localization_se: (p * (1.0 - p) / plan.trials as f64).sqrt(),
            });
            if Some(spec.kind()) == wiener_kind {
                wiener_linfs = linfs;
            } else if spec.kind() == EstimatorKind::GenieWiener {
                genie_linfs = linfs;
            }
        }

        // Membership is a property of the sampled signal, identical
        // across estimators; read it off the first estimator's rows.
        let member_hits = block
            .iter()
            .step_by(estimator_count)
            .filter(|r| r.in_typical_set)
            .count();

        let ratio = if wiener_kind.is_some() && has_genie {
            ratio_of_means(&wiener_linfs, &genie_linfs)
        } else {
            None
        };

        per_n.push(PerNSummary {
            n,
            epsilon: plan.epsilon_scalars[n_index],
            typical_set_delta: plan.deltas[n_index],
            typical_set_frequency: member_hits as f64 / plan.trials as f64,
            estimators: cells,
            wiener_to_genie_ratio: ratio.map(|(r, _)| r),
            wiener_to_genie_se: ratio.map(|(_, se)| se),
        });
    }

    Ok(ExperimentSummary {
        schema_version: SUMMARY_SCHEMA_VERSION.to_string(),
        config: config.clone(),
        per_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ratio_of_means_known_value() {
        let (r, se) = ratio_of_means(&[2.0, 4.0], &[1.0, 2.0]).unwrap();
        assert_relative_eq!(r, 2.0, epsilon = 1e-15);
        // Perfectly proportional pairs still carry sampling noise through
        // the delta method, but the ratio itself is exact.
        assert!(se >= 0.0);
    }

    #[test]
    fn ratio_of_identical_samples_is_one_with_zero_se() {
        let v = [1.5, 2.5, 0.5, 3.0];
        let (r, se) = ratio_of_means(&v, &v).unwrap();
        assert_relative_eq!(r, 1.0, epsilon = 1e-15);
        assert!(se < 1e-12, "se {se}");
    }

    #[test]
    fn ratio_none_on_zero_denominator() {
        assert!(ratio_of_means(&[1.0, 2.0], &[0.0, 0.0]).is_none());
    }
}
