use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("register of {requested} qubits is outside the supported range 1..={max}")]
    Capacity { requested: usize, max: usize },

    #[error("amplitude count {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("state is not normalized: squared norm is {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("qubit {qubit} is out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("qubit {0} is used more than once in a single gate")]
    DuplicateQubit(usize),

    #[error("outcome {outcome} on qubit {qubit} has zero probability")]
    ImpossibleOutcome { qubit: usize, outcome: u8 },

    #[error("input is all zeros; normalization is undefined")]
    DegenerateInput,

    #[error("probability encoding needs non-negative values, found {value} at index {index}")]
    NegativeValue { index: usize, value: f64 },

    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("amplitude {index} has imaginary part {magnitude:e}, above the strict decode limit")]
    ImaginaryResidual { index: usize, magnitude: f64 },

    #[error("{n}-qubit dense matrix exceeds the cap of {max} qubits")]
    DenseCap { n: usize, max: usize },

    #[error("degenerate filter: {0}")]
    DegenerateFilter(String),

    #[error("invalid filter spec: {0}")]
    InvalidFilter(String),

    #[error("filter removes the whole state; the kept branch has probability {probability:e}")]
    Annihilated { probability: f64 },

    #[error("no successful postselection within {max_trials} trials")]
    RetryBudgetExhausted { max_trials: usize },

    #[error("transpose schemes need an even qubit count, got {0}")]
    OddQubitCount(usize),

    #[error("invalid basis layout: {0}")]
    InvalidLayout(String),

    #[error("invalid transpose scheme: {0}")]
    InvalidScheme(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Whether the error comes from a postselection that never produced the kept branch.
    pub fn is_postselection_failure(&self) -> bool {
        matches!(self, Error::Annihilated { .. } | Error::RetryBudgetExhausted { .. })
    }
}
