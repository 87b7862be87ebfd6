use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Process-level category of an [`Error`], mirrored by the CLI exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input: malformed spec, invalid parameters, domain errors.
    Input,
    /// A size cap was exceeded.
    Cap,
    /// Two computation routes disagreed; always a bug.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument must be positive")]
    ZeroArgument,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("parse error at byte {position}: expected {expected}, found {found}")]
    Parse {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("order {order} exceeds the cap {cap}")]
    OrderCap { order: u64, cap: u64 },
    #[error("invalid action: {0}")]
    BadAction(String),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("poset elements are not comparable")]
    NotComparable,
    #[error("enumeration of {work} tuples exceeds the brute-force cap {cap}")]
    Infeasible { work: String, cap: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("the group is abelian; its spectrum is empty and the generating series is 1/(1-z)")]
    AbelianGroup,
    #[error("z = {0} is a pole of the generating series")]
    PoleHit(String),
    #[error("spectrum and abelian statistics disagree: {0}")]
    SpectrumStatsMismatch(String),
    #[error("not enough values to determine the spectrum: {0}")]
    NotEnoughData(String),
    #[error("sequence is not generated by a finite spectrum: {0}")]
    NonSpectralSequence(String),
    #[error("closed formula disagrees with enumeration: {0}")]
    FormulaMismatch(String),
    #[error("explicit spectrum disagrees with the Moebius spectrum: {0}")]
    SpectrumMismatch(String),
    #[error("orders are not coprime: gcd({a}, {b}) = {gcd}")]
    NotCoprime { a: u64, b: u64, gcd: u64 },
    #[error("quotient group is not cyclic")]
    NotCyclic,
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::OrderCap { .. } | Error::Infeasible { .. } => ErrorClass::Cap,
            Error::InternalInconsistency(_)
            | Error::SpectrumStatsMismatch(_)
            | Error::FormulaMismatch(_)
            | Error::SpectrumMismatch(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }

    /// Stable machine-readable code used in structured reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroArgument => "ZeroArgument",
            Error::SingularMatrix => "SingularMatrix",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse { .. } => "ParseError",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::OrderCap { .. } => "OrderCap",
            Error::BadAction(_) => "BadAction",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotNormal => "NotNormal",
            Error::NotComparable => "NotComparable",
            Error::Infeasible { .. } => "Infeasible",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::AbelianGroup => "AbelianGroup",
            Error::PoleHit(_) => "PoleHit",
            Error::SpectrumStatsMismatch(_) => "SpectrumStatsMismatch",
            Error::NotEnoughData(_) => "NotEnoughData",
            Error::NonSpectralSequence(_) => "NonSpectralSequence",
            Error::FormulaMismatch(_) => "FormulaMismatch",
            Error::SpectrumMismatch(_) => "SpectrumMismatch",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotCyclic => "NotCyclic",
            Error::HypothesisFails(_) => "HypothesisFails",
        }
    }
}
