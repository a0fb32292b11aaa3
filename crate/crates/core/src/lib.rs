//! Estimation of Gaussian-mixture signals in additive white Gaussian noise,
//! evaluated under the worst-case (ℓ∞) error.
//!
//! The crate provides:
//!
//! - mixture and Bernoulli-Gaussian signal models with labelled sampling
//!   ([`priors`]),
//! - the parallel AWGN channel ([`channel`]),
//! - Wiener-filter, posterior-mean, genie-aided, and identity estimators
//!   ([`estimators`]),
//! - ℓ∞/ℓ2 error functionals and argmax-localization diagnostics
//!   ([`metrics`]),
//! - closed-form error-pattern distributions, extreme-value normalizers,
//!   and typical-set bounds ([`theory`]),
//! - a small-dimension numerical approximation of the minimum mean
//!   ℓ∞-error estimator ([`oracle`]),
//! - seeded, reproducible Monte Carlo campaigns with CSV/JSON reporting
//!   ([`experiments`]).
//!
//! All randomness flows through explicitly derived substreams
//! ([`rng`]), so every trial is reproducible in isolation and results do
//! not depend on thread scheduling.

pub mod channel;
pub mod estimators;
pub mod experiments;
pub mod metrics;
pub mod oracle;
pub mod priors;
pub mod rng;
pub mod stats;
pub mod theory;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A call violated an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Two sequences that must agree in length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    /// The requested value is undefined on this part of the domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configuration file failed to parse or validate.
    #[error("config error: {0}")]
    Config(String),
    /// Reading or writing an artifact failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(std::io::Error::other(err))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
