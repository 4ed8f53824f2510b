use thiserror::Error;

/// Errors produced by catalog parsing, verification and geometry routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("tensor space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("missing parameter `{0}` in assignment")]
    MissingParameter(String),

    #[error("zero tensor has rank zero, not one")]
    ZeroTensor,

    #[error("term {0} has negative valuation; normalize the entry first")]
    NegativeValuation(usize),

    #[error("algorithm is not first order (h = {0})")]
    NotFirstOrder(i64),

    #[error("terms not generically independent (rank {rank} < {terms})")]
    RankDeficient { rank: usize, terms: usize },

    #[error("errata edit addresses invalid slot: {0}")]
    BadErrataSlot(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("max-rank slice not found after {0} trials")]
    MaxRankSliceNotFound(usize),

    #[error("gluing failed verification: {0}")]
    GlueFailed(String),

    #[error("Lie algebra action does not preserve the deleted coordinates: {0}")]
    ActionNotClosed(String),

    #[error("coordinate block invalid: {0}")]
    BadBlock(String),

    #[error("t-adic reduction exceeded the iteration cap ({0} steps); input data is suspect")]
    ReductionDiverged(usize),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
