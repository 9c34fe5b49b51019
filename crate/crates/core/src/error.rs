use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("time samples are not strictly increasing at index {index}")]
    NonMonotoneTime { index: usize },

    #[error("time grid needs at least 2 samples, got {len}")]
    GridTooShort { len: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-finite value at row {row}, column {col}")]
    NonFiniteData { row: usize, col: usize },

    #[error("invalid window [{t1}, {t2}]: {reason}")]
    InvalidWindow { t1: f64, t2: f64, reason: String },

    #[error("basis layout has no members")]
    EmptyLayout,

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("no samples inside window [{t1}, {t2}]")]
    EmptyWindow { t1: f64, t2: f64 },

    #[error("t = {t} lies outside window [{t1}, {t2}]")]
    OutOfWindow { t: f64, t1: f64, t2: f64 },

    #[error("test basis window does not match trial projection window")]
    WindowMismatch,

    #[error("matrix has no nonzero singular values")]
    ZeroMatrix,

    #[error("eigenvalue iteration did not converge")]
    EigFailure,

    #[error("implicit step matrix is numerically singular (rcond = {rcond:e})")]
    SingularStep { rcond: f64 },

    #[error("snapshot times are not equispaced (max relative spacing deviation {deviation:e})")]
    NonUniformGrid { deviation: f64 },

    #[error("requested rank {rank} exceeds the admissible maximum {max}")]
    RankTooLarge { rank: usize, max: usize },

    #[error("generator is not diagonalizable to tolerance (eigenvector condition {cond:e})")]
    NonDiagonalizable { cond: f64 },

    #[error("time grids of truth and prediction differ")]
    GridMismatch,

    #[error("reference state has zero norm at time index {index}")]
    ZeroNorm { index: usize },

    #[error("Y- is singular")]
    SingularYMinus,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("duplicate time value {t}")]
    DuplicateTime { t: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable, machine-parsable category name used by the command-line front end.
    pub fn category(&self) -> &'static str {
        match self {
            Error::NonMonotoneTime { .. } => "NonMonotoneTime",
            Error::GridTooShort { .. } => "GridTooShort",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NonFiniteData { .. } => "NonFiniteData",
            Error::InvalidWindow { .. } => "InvalidWindow",
            Error::EmptyLayout => "EmptyLayout",
            Error::InvalidBasis(_) => "InvalidBasis",
            Error::EmptyWindow { .. } => "EmptyWindow",
            Error::OutOfWindow { .. } => "OutOfWindow",
            Error::WindowMismatch => "WindowMismatch",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::EigFailure => "EigFailure",
            Error::SingularStep { .. } => "SingularStep",
            Error::NonUniformGrid { .. } => "NonUniformGrid",
            Error::RankTooLarge { .. } => "RankTooLarge",
            Error::NonDiagonalizable { .. } => "NonDiagonalizable",
            Error::GridMismatch => "GridMismatch",
            Error::ZeroNorm { .. } => "ZeroNorm",
            Error::SingularYMinus => "SingularYMinus",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
            Error::DuplicateTime { .. } => "DuplicateTime",
            Error::Config(_) => "ConfigError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
