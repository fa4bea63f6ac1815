use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// The split matters to callers: `Parse`, `UnknownVariable`, `RingMismatch`,
/// `RankMismatch` and `InvalidArgument` mean the input was malformed;
/// `GuardExceeded` and `Unsupported` mean the input was well-formed but the
/// computation was refused; the remaining variants are domain-level failures
/// of a checked precondition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("zero ideal")]
    ZeroIdeal,

    #[error("ideal is the unit ideal")]
    UnitIdeal,

    #[error("ideal is not contained in the maximal ideal")]
    NotInMaximalIdeal,

    #[error("not m-primary")]
    NotMPrimary,

    #[error("module equals the ambient free module; the quotient is zero")]
    ZeroQuotient,

    #[error("quotient does not have finite length")]
    NotFiniteLength,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
