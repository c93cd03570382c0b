use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("genus {0} is out of range (need g >= 3)")]
    GenusTooSmall(u32),

    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("{curve} is not a one-dimensional stratum of M_{genus}")]
    CurveOutOfRange { curve: String, genus: u32 },

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("maximal elliptic tails {0:?} and {1:?} overlap")]
    OverlappingTails(Vec<u32>, Vec<u32>),

    #[error("elliptic tail vertex {0} carries markings")]
    MarkedTail(u32),

    #[error("degree {degree} <= 2g-2 = {bound}: higher cohomology not excluded")]
    Regime { degree: i64, bound: i64 },

    #[error("negative degree {0}")]
    NegativeDegree(i64),

    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
