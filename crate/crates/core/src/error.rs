use thiserror::Error;

/// Errors raised by instance validation, domain checks and scheme construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid problem instance: {0}")]
    InvalidInstance(String),

    #[error("D1 = {d1} is outside the domain [{lo}, {hi}]")]
    OutOfDomain { d1: f64, lo: f64, hi: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("analog layer uses power {analog} but only {power} is available")]
    AnalogPowerExceeded { analog: f64, power: f64 },

    #[error("degenerate: pure analog (analog layer saturates power {power}, no digital power left)")]
    PureAnalog { power: f64 },

    #[error("rate window violated: I(S2;Xd) = {lower} nats exceeds I(Xd;Y2) = {upper} nats")]
    RateInfeasible { lower: f64, upper: f64 },

    #[error("alpha~^2 = {alpha_sq} lies outside the admissible window [{lo}, {hi}]")]
    AlphaWindow { alpha_sq: f64, lo: f64, hi: f64 },

    #[error("unknown component label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate component label `{0}`")]
    DuplicateLabel(String),

    #[error("covariance matrix is not {0}")]
    BadCovariance(&'static str),

    #[error("observation covariance is singular and pseudo-inverse fallback is disabled")]
    SingularObservation,

    #[error("label groups must be nonempty and disjoint")]
    BadGroups,

    #[error("sample size {n} too small: need at least {min}")]
    TooFewSamples { n: usize, min: usize },

    #[error("instance has no hybrid window (P <= 2*rho*N1/(1-rho)); the uncoded scheme is optimal")]
    NoHybridWindow,
}

pub type Result<T> = std::result::Result<T, Error>;
