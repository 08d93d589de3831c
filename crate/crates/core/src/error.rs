use thiserror::Error;

pub type Result<T> = std::result::Result<T, MiczError>;

/// Coarse classification used for process exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad input: invalid quantum numbers, out-of-range indices, bad flags.
    Validation,
    /// A numerical procedure failed to meet its tolerance.
    Numerical,
    /// An identity that must hold by construction was violated.
    Internal,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Validation => 2,
            ErrorCategory::Numerical => 3,
            ErrorCategory::Internal => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MiczError {
    #[error("quantum number {name} must be non-negative, got {value}")]
    NegativeQuantumNumber { name: &'static str, value: i64 },
    #[error("Q = {q} and L + J = {lj} have different parity")]
    ParityMismatch { q: i64, lj: i64 },
    #[error("sector is empty: n + Q/2 - (L+J)/2 + 1 = {dim}")]
    EmptySector { dim: String },
    #[error("charge Z must be positive, got {0}")]
    NonpositiveCharge(String),
    #[error("{what} index {index} outside {range}")]
    IndexOutOfRange { what: &'static str, index: String, range: String },
    #[error("lambda = {lambda} outside [{lo}, {hi}]")]
    LambdaOutOfRange { lambda: String, lo: String, hi: String },
    #[error("factorial of {0}: invalid sector reached a closed form")]
    FactorialOfNegative(String),
    #[error("cannot add radicals with radicands {0} and {1}")]
    RadicandMismatch(String, String),
    #[error("orthogonality violated: {0}")]
    OrthogonalityViolation(String),
    #[error("no convergence: {0}")]
    ConvergenceFailure(String),
    #[error("continuant recurrence degenerate: {0}")]
    DegenerateShift(String),
    #[error("branch matching ambiguous: {0}")]
    BranchMatchAmbiguous(String),
    #[error("limit mismatch: {0}")]
    LimitMismatch(String),
    #[error("point outside domain: {0}")]
    DomainError(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("exact identity violated: {0}")]
    IdentityViolation(String),
    #[error("tolerance exceeded: {0}")]
    ToleranceExceeded(String),
}

impl MiczError {
    /// Stable identifier, printed by the CLI and exposed over FFI.
    pub fn name(&self) -> &'static str {
        match self {
            MiczError::NegativeQuantumNumber { .. } => "NegativeQuantumNumber",
            MiczError::ParityMismatch { .. } => "ParityMismatch",
            MiczError::EmptySector { .. } => "EmptySector",
            MiczError::NonpositiveCharge(_) => "NonpositiveCharge",
            MiczError::IndexOutOfRange { .. } => "IndexOutOfRange",
            MiczError::LambdaOutOfRange { .. } => "LambdaOutOfRange",
            MiczError::FactorialOfNegative(_) => "FactorialOfNegative",
            MiczError::RadicandMismatch(..) => "RadicandMismatch",
            MiczError::OrthogonalityViolation(_) => "OrthogonalityViolation",
            MiczError::ConvergenceFailure(_) => "ConvergenceFailure",
            MiczError::DegenerateShift(_) => "DegenerateShift",
            MiczError::BranchMatchAmbiguous(_) => "BranchMatchAmbiguous",
            MiczError::LimitMismatch(_) => "LimitMismatch",
            MiczError::DomainError(_) => "DomainError",
            MiczError::InvalidArgument(_) => "InvalidArgument",
            MiczError::IdentityViolation(_) => "IdentityViolation",
            MiczError::ToleranceExceeded(_) => "ToleranceExceeded",
        }
    }

    pub fn category(&self) -> ErrorCategory {
        use MiczError::*;
        match self {
            NegativeQuantumNumber { .. }
            | ParityMismatch { .. }
            | EmptySector { .. }
            | NonpositiveCharge(_)
            | IndexOutOfRange { .. }
            | LambdaOutOfRange { .. }
            | DomainError(_)
            | InvalidArgument(_) => ErrorCategory::Validation,
            ConvergenceFailure(_)
            | DegenerateShift(_)
            | BranchMatchAmbiguous(_)
            | LimitMismatch(_)
            | RadicandMismatch(..)
            | ToleranceExceeded(_) => ErrorCategory::Numerical,
            FactorialOfNegative(_) | OrthogonalityViolation(_) | IdentityViolation(_) => ErrorCategory::Internal,
        }
    }
}
