//! Seeded Monte Carlo campaigns with CSV/JSON reporting.

pub mod config;
pub mod output;
pub mod records;
pub mod run;
pub mod summary;

pub use config::{
    ComponentConfig, EpsilonSchedule, ExperimentConfig, Lemma1Config, OracleCampaignConfig,
    PriorConfig, ScheduleName, MAX_N, MAX_N_LARGE,
};
pub use output::{write_campaign, write_lemma1, write_oracle};
pub use records::{Lemma1Record, OracleTrialRecord, TrialRecord};
pub use run::{
    lemma1_campaign, oracle_campaign, ratio_campaign, run_campaign, CampaignOutput, Lemma1Cell,
    Lemma1Output, OracleCell, OracleComparison,
};
pub use summary::{ratio_of_means, EstimatorCell, ExperimentSummary, PerNSummary};
