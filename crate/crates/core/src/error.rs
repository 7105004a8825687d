use std::fmt;

/// Why a spectrum could not be certified for universal perfect state transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoCertificateReason {
    /// Some eigenvalue-difference ratio has no small-denominator rational form.
    IrrationalRatio,
    /// The step `j` shares a factor with `n`.
    NotCoprime,
    /// The integer differences are not `j*k` modulo `n`.
    CongruenceFail,
    /// All eigenvalues coincide.
    DegenerateSpectrum,
    /// The integer fit leaves a residual above the budget.
    ResidualTooLarge,
    /// The certificate was issued but the walk did not reach the scheduled target.
    ValidationFailed,
}

impl fmt::Display for NoCertificateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NoCertificateReason::IrrationalRatio => "IrrationalRatio",
            NoCertificateReason::NotCoprime => "NotCoprime",
            NoCertificateReason::CongruenceFail => "CongruenceFail",
            NoCertificateReason::DegenerateSpectrum => "DegenerateSpectrum",
            NoCertificateReason::ResidualTooLarge => "ResidualTooLarge",
            NoCertificateReason::ValidationFailed => "ValidationFailed",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrices do not anticommute (max |AB+BA| = {residual:e})")]
    NotAnticommuting { residual: f64 },
    #[error("A^2 + B^2 is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("matrix is not unitary (max |U'U - I| = {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("vertex index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("entries ({u}, {v}) and ({v}, {u}) are not complex conjugates")]
    ConjugateMismatch { u: usize, v: usize },
    #[error("duplicate entry for pair ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("weights do not define a Hermitian circulant")]
    NotHermitianCirculant,
    #[error("cycle order {0} is degenerate (adjacency vanishes)")]
    DegenerateOrder(usize),
    #[error("eigenvalue exponents must be distinct")]
    DuplicateAlpha,
    #[error("order {0} is outside the supported range")]
    OrderTooLarge(usize),
    #[error("circulant eigenvalue has imaginary part {0:e}")]
    NonRealEigenvalue(f64),
    #[error("trace {0:e} is not zero")]
    TraceNotZero(f64),
    #[error("spectrum has no nonzero eigenvalue")]
    ZeroSpectrum,
    #[error("invalid weights: {0}")]
    WeightsInvalid(String),
    #[error("invalid Kronecker target: {0}")]
    InvalidTarget(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("support graph is disconnected")]
    DisconnectedSupport,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no certificate: {0}")]
    NoCertificate(NoCertificateReason),
    #[error("invalid permutation or phases: {0}")]
    InvalidMonomial(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
