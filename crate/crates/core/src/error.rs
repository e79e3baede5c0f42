use thiserror::Error;

/// Errors raised by code construction, simulation and conversion.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("order parameter m = {m} is below the minimum {min}")]
    OrderTooSmall { m: usize, min: usize },

    #[error("operator {0} is not Hermitian")]
    NonHermitian(String),

    #[error("measuring {0} would destroy the encoded logical qubit")]
    LogicalDestroyingMeasurement(String),

    #[error("operators {0} and {1} do not commute")]
    NonCommuting(String, String),

    #[error("no fixing operator anticommutes with exactly the flagged rows {0:?}")]
    NoFixingOperator(Vec<usize>),

    #[error("frame is inconsistent: {0}")]
    InconsistentFrame(String),

    #[error("dense oracle is limited to {max} qubits, got {n}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("invalid amplitude: {0}")]
    InvalidAmplitude(String),

    #[error("projection onto outcome {outcome} of {op} has zero probability")]
    ImpossibleOutcome { op: String, outcome: u8 },

    #[error("cost model: {0}")]
    CostModel(String),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
