use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series denominator has constant term {0}, expected +1 or -1")]
    NonInvertibleSeries(i64),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("zero element where a nonzero one is required")]
    ZeroInput,
    #[error("frame is not isotropic: q(h{0}, h{1}) != 0")]
    NotIsotropic(usize, usize),
    #[error("frame does not have full rank (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },
    #[error("kernel has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("odd rank {0} where an even rank is required")]
    OddRank(usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("bidegree mismatch: {0}")]
    Bidegree(String),
    #[error("parameters outside the admissible cone: {0}")]
    Inadmissible(String),
    #[error("trivial relation: all coefficients vanish for {0}")]
    TrivialRelation(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("root datum mismatch")]
    DatumMismatch,
    #[error("non-integral division in plethysm: {0}")]
    NonIntegral(String),
    #[error("negative multiplicity {mult} at {weight}: input is not a module character")]
    NegativeMultiplicity { weight: String, mult: i64 },
    #[error("rank {rank} outside supported range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("fixture parse error: {0}")]
    Fixture(String),
}
