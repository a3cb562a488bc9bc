use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A strategy set breaks the game model (value outside [-1,1], duplicate,
    /// missing a positive or a negative strategy).
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("support point {point} is not in the strategy grid")]
    OutsideGrid { point: String },

    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),

    /// The projection test needs x*y != 0 on the whole support.
    #[error("projection test requires x*y != 0 on the support, found atom at ({x}, {y})")]
    ZeroCoordinateAtom { x: String, y: String },

    #[error("cycle pattern violates condition {condition}: {detail}")]
    CycleCondition { condition: u8, detail: String },

    #[error("invalid rotation parameters: {0}")]
    InvalidRotation(String),

    #[error("point {0} lies outside the rotation interval [a, b)")]
    OutsideRotationInterval(String),

    #[error("polytope is infeasible")]
    Infeasible,

    #[error("polytope is not pointed: constraint rows have rank {rank} < {dim}")]
    NotPointed { rank: usize, dim: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
