use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not positive definite: leading principal minor of order {order} is {value}")]
    NotPositiveDefinite { order: usize, value: String },

    #[error("matrix entries too large: after clearing denominators they must fit in 64 bits")]
    EntriesTooLarge,

    #[error("transformation is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("expected a rank-2 form, got rank {0}")]
    NotRank2(usize),

    #[error("invalid rational {0:?}")]
    BadRational(String),

    #[error("negative bound {0}")]
    NegativeBound(String),

    #[error("unknown lattice name {0:?}")]
    UnknownName(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no reduced binary form has this spectrum")]
    NoMatch,

    #[error("spectrum is matched by {} reduced forms: {}", .0.len(), .0.join(", "))]
    Ambiguous(Vec<String>),

    #[error("spectrum does not reach far enough to determine the form")]
    Underdetermined,
}
