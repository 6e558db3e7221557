use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no sign change of E_{next} - E_{k} on g in [{lo}, {hi}]", next = .k + 1)]
    NoSignChange { k: usize, lo: f64, hi: f64 },

    #[error("no sign change of lambda12 - lambda3 on g in [{lo}, {hi}]")]
    NoCrossover { lo: f64, hi: f64 },

    #[error("index {index} out of range for {m} atoms")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("weights do not form a probability distribution: {0}")]
    InvalidWeights(String),

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("{measure} requires at least {min} atoms, got {m}")]
    TooFewAtoms {
        measure: &'static str,
        min: usize,
        m: usize,
    },

    #[error("negative correlation value {0} beyond rounding tolerance")]
    NegativeCorrelation(f64),

    #[error("crossing table not strictly increasing at k = {k}: g_k = {g_k}, g_(k-1) = {g_prev}")]
    NonMonotoneCrossings { k: usize, g_k: f64, g_prev: f64 },
}
