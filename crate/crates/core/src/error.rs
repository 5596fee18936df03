use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grade {0} is not one of 0, 1, 2")]
    InvalidGrade(u32),
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{qubits} qubits exceeds the dense oracle limit of {limit}")]
    Capacity { qubits: usize, limit: usize },
    #[error("qubit count must be at least 1")]
    ZeroQubits,
    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),
    #[error("multivector lies outside the state module (residual {residual:e})")]
    OutsideIdeal { residual: f64 },
    #[error("generator annihilates the vacuum; the state is zero")]
    DegenerateState,
    #[error("Pauli string has phase i^{0}; a Hermitian observable needs an even exponent")]
    OddPhase(u8),
    #[error("tableau rows are inconsistent: {0}")]
    InconsistentTableau(&'static str),
    #[error("measurement is not a unitary gate")]
    NotUnitary,
    #[error("invalid Pauli string at byte {position}: {message}")]
    PauliSyntax {
        position: usize,
        message: &'static str,
    },
}
