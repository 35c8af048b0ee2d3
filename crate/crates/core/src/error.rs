use thiserror::Error;

use crate::index_set::IndexSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("triangular element is not invertible: diagonal entry {index} is not positive")]
    NotInvertible { index: usize },
    #[error("improper factor: {0}")]
    ImproperFactor(String),
    #[error("point lies outside the closed cone (reconstruction residual {residual:e})")]
    OutsideCone { residual: f64 },
    #[error("rank {rank} exceeds the supported bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("graph is not homogeneous chordal: vertices {witness:?} induce a {kind}")]
    NotHomogeneousChordal { witness: [usize; 4], kind: ForbiddenKind },
    #[error("index {index} out of range 1..={bound}")]
    BadIndex { index: usize, bound: usize },
    #[error("ordering is not a trivially perfect elimination ordering")]
    OrderingNotVerified,
    #[error("invalid graph: {0}")]
    BadGraph(String),
    #[error("matrix is not PSD completable (reconstruction residual {residual:e})")]
    NotCompletable { residual: f64 },
    #[error("maximum completion rank {rank} is below the order {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("input is zero")]
    ZeroInput,
    #[error("certificate does not match the problem: {0}")]
    CertificateMismatch(String),
    #[error("bad dimensions: {0}")]
    BadDims(String),
    #[error("square root of {0} is not representable exactly")]
    Irrational(String),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index set {0} is not valid here")]
    BadIndexSet(IndexSet),
}

/// Forbidden induced subgraphs of trivially perfect graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ForbiddenKind {
    P4,
    C4,
}

impl std::fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ForbiddenKind::P4 => write!(f, "P4"),
            ForbiddenKind::C4 => write!(f, "C4"),
        }
    }
}
