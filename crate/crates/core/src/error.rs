use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for {n_vars} variables")]
    IndexOutOfRange { index: usize, n_vars: usize },

    #[error("evaluation on the zero set: |value| = {magnitude:e} is below the degeneracy tolerance")]
    EvaluationOnZeroSet { magnitude: f64 },

    #[error("point lies on the link: |f_{index}(p)| = {magnitude:e}")]
    PointOnLink { index: usize, magnitude: f64 },

    #[error("point is off the sphere: ||p|| = {norm}, expected radius {radius}")]
    OffSphere { norm: f64, radius: f64 },

    #[error("the zero polynomial has no weight data")]
    ZeroPolynomial,

    #[error("polynomial has a constant term, so it cannot vanish at the origin")]
    ConstantTermPresent,

    #[error("polynomial is not weighted homogeneous: the weight system is infeasible")]
    NotWeightedHomogeneous,

    #[error("polynomial is not homogeneous: monomial degrees differ")]
    NotHomogeneous,

    #[error("a common weight certificate is required for the algebraic test")]
    CertificateRequired,

    #[error("root finding did not converge: residual {residual:e} after {iterations} iterations")]
    RootFindingDidNotConverge { residual: f64, iterations: usize },

    #[error("point is not singular: margin {margin:e} exceeds the tolerance")]
    NotSingular { margin: f64 },

    #[error("the two anchor vectors are real-linearly dependent; the tangent basis is degenerate")]
    DegenerateSpan,

    #[error("zero vector has no orthogonal complement basis")]
    ZeroVector,

    #[error("point is not a fold point")]
    NotAFold,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Process exit code the CLI maps this error to:
    /// 1 for a negative analysis verdict on well-formed input,
    /// 2 for unusable input (parse/validation), 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EvaluationOnZeroSet { .. }
            | Error::PointOnLink { .. }
            | Error::OffSphere { .. }
            | Error::ConstantTermPresent
            | Error::NotWeightedHomogeneous
            | Error::NotHomogeneous
            | Error::CertificateRequired
            | Error::NotSingular { .. }
            | Error::DegenerateSpan
            | Error::ZeroVector
            | Error::NotAFold => 1,
            Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::ZeroPolynomial
            | Error::Parse { .. }
            | Error::UnknownSuite(_)
            | Error::InvalidInput(_) => 2,
            Error::RootFindingDidNotConverge { .. } | Error::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
