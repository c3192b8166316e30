use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count {0} outside 1..={max}", max = crate::MAX_QUBITS)]
    InvalidWidth(usize),

    #[error("qubit {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("qubit {0} appears more than once among the controls")]
    DuplicateControl(usize),

    #[error("target qubit {0} is also a control")]
    TargetInControls(usize),

    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),

    #[error("gate {0} is not a basis gate; lower the circuit first")]
    Unlowered(String),

    #[error("no lowering rule for {0}")]
    Unsupported(String),

    #[error("operation needs at least one control qubit")]
    EmptyControls,

    #[error("width mismatch: expected {expected} qubits, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },

    #[error("dense unitary of {0} qubits exceeds the {max}-qubit oracle limit", max = crate::sim::MAX_DENSE_QUBITS)]
    OracleTooLarge(usize),

    #[error("matrix is not an involution (max deviation {0:e})")]
    NotInvolution(f64),

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("lowered circuit deviates from its reference by {0:e} after phase fitting")]
    VerificationFailed(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("distribution lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors caused by bad input rather than a broken invariant.
    pub fn is_usage(&self) -> bool {
        !matches!(
            self,
            Error::InvariantViolation(_) | Error::VerificationFailed(_)
        )
    }
}
