use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("invalid Pauli string {text:?}: {reason}")]
    PauliParse { text: String, reason: String },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndex { index: usize, n_qubits: usize },
    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    SameQubit(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("frame rows do not form a symplectic basis")]
    RankDeficient,
    #[error("{n_qubits} qubits exceeds the dense cap of {cap}")]
    SizeCap { n_qubits: usize, cap: usize },
    #[error("rotation requires relative support 1, found {0}")]
    Support(usize),
    #[error("instance {label}: {source}")]
    Instance {
        label: String,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
