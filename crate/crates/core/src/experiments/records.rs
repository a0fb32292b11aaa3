//! Per-trial records emitted by the campaigns.

use serde::{Deserialize, Serialize};

use crate::estimators::EstimatorKind;

/// One estimator evaluation on one sampled trial. Serialized to CSV with
/// the header
/// `n,trial,estimator,linf,l2,argmax_index,argmax_label,normalized_linf,in_typical_set`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    #[serde(rename = "trial")]
    pub trial_index: usize,
    pub estimator: EstimatorKind,
    pub linf: f64,
    pub l2: f64,
    pub argmax_index: usize,
    pub argmax_label: u32,
    /// linf / √(ln n).
    pub normalized_linf: f64,
    pub in_typical_set: bool,
}

/// One normalized-maximum statistic trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Record {
    pub n: usize,
    #[serde(rename = "trial")]
    pub trial_index: usize,
    /// max|u_i| / √(2σ²·ln n).
    pub statistic: f64,
}

/// One estimator evaluation inside an oracle comparison trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleTrialRecord {
    #[serde(rename = "trial")]
    pub trial_index: usize,
    pub estimator: String,
    pub linf: f64,
}
