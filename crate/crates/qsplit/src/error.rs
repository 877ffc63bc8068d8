//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("circuit width must be at least 1")]
    ZeroWidth,

    #[error("width {width} exceeds the supported maximum of {max} qubits")]
    WidthTooLarge { width: usize, max: usize },

    #[error("qubit index {index} out of range for width {width}")]
    QubitOutOfRange { index: usize, width: usize },

    #[error("duplicate qubit index {index} in gate")]
    DuplicateQubit { index: usize },

    #[error("multi-controlled Z needs at least 2 qubits, got {got}")]
    MczTooSmall { got: usize },

    #[error("multi-controlled X needs at least 1 control")]
    McxNoControls,

    #[error("phase denominator exponent {den} is too large")]
    PhaseDenTooLarge { den: u32 },

    #[error("width mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("measurement gates are not supported here; sample the final state instead")]
    MeasureUnsupported,

    #[error("gate `{gate}` is not elementary; decompose the circuit first")]
    NotElementary { gate: String },

    #[error("circuit is not in DNF form")]
    NotDnfForm,

    #[error("gate `{gate}` cannot be split: not an X on the parity qubit, a full-width Z, or a single-qubit gate off the parity qubit")]
    UnsplittableGate { gate: String },

    #[error("circuit is not a DNF phase oracle: {reason}")]
    NotPhaseOracle { reason: String },

    #[error("parse error in {what} at line {line}: {msg}")]
    Parse {
        what: &'static str,
        line: usize,
        msg: String,
    },

    #[error("invalid bitstring `{input}`")]
    InvalidBitstring { input: String },

    #[error("formula arity {arity} is below the minimum of {min}")]
    ArityTooSmall { arity: usize, min: usize },

    #[error("arity {arity} exceeds the desk-scale limit of {max}")]
    ArityTooLarge { arity: usize, max: usize },

    #[error("term {term:#b} out of range for arity {arity}")]
    TermOutOfRange { term: u64, arity: usize },

    #[error("duplicate term {term:#b} in formula")]
    DuplicateTerm { term: u64 },

    #[error("probability {value} outside [0, 1]")]
    InvalidProbability { value: f64 },

    #[error("invalid machine profile: {msg}")]
    InvalidProfile { msg: String },

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("histogram is empty")]
    EmptyHistogram,

    #[error("invalid search plan: {msg}")]
    InvalidPlan { msg: String },

    #[error("no candidate passed classical verification; the run is noise-dominated")]
    NoVerifiedCandidate,

    #[error("query budget of {budget} exhausted after {queries} samples{}", if *.zero_rows_only { " (every sample was the zero row; the function looks constant)" } else { "" })]
    QueryBudgetExhausted {
        budget: usize,
        queries: usize,
        zero_rows_only: bool,
    },

    #[error("invalid configuration: {msg}")]
    Config { msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad input (files, flags, ranges) rather than
    /// by a failed run. The CLI maps these to exit code 1, the rest to 2.
    pub fn is_config(&self) -> bool {
        !matches!(
            self,
            Error::NoVerifiedCandidate | Error::QueryBudgetExhausted { .. } | Error::Io(_)
        )
    }
}
