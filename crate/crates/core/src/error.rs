use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid duad {{{0}, {1}}}: need two distinct elements of 1..6")]
    InvalidDuad(u8, u8),
    #[error("point set is not a triad (three pairwise non-collinear points)")]
    NotATriad,
    #[error("point {0} is not in the core")]
    PointNotInCore(usize),
    #[error("Veldkamp sum of a hyperplane with itself is the full point set")]
    ZeroSum,
    #[error("invalid quadruple: {0}")]
    InvalidQuadruple(&'static str),
    #[error("invalid set partition: {0}")]
    InvalidPartition(&'static str),
    #[error("hyperplane id {0} outside 1..1023")]
    HyperplaneOutOfRange(u32),
    #[error("point set is not a geometric hyperplane")]
    NotAHyperplane,
    #[error("footnote {footnote} does not apply to a core with profile {profile}")]
    FootnoteMismatch { footnote: String, profile: String },
    #[error("fixture {file} line {line}: {message}")]
    Fixture { file: String, line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
