use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("polynomial variable sets differ")]
    VarMismatch,

    #[error("inversion of the zero polynomial")]
    ZeroInversion,

    #[error("numerator is not a product of registered atoms: {0}")]
    UnregisteredAtom(String),

    #[error("not a root: {0}")]
    NotARoot(String),

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("word is not reduced")]
    NotReduced,

    #[error("move not applicable at position {0}")]
    MoveNotApplicable(usize),

    #[error("point leaves the chain domain at slot {0}")]
    DomainViolation(usize),

    #[error("point is not in the region: beta_{0} <= 0")]
    NotInRegion(usize),

    #[error("element is not in the big cell")]
    NotInBigCell,

    #[error("element is not unipotent of the requested sign")]
    NotUnipotent,

    #[error("Borel membership check failed")]
    BorelCheckFailed,

    #[error("sign pattern violated at slot {0}")]
    SignPatternViolation(usize),

    #[error("convention failure: {0}")]
    ConventionFailure(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
