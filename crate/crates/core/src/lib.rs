//! Exact invariants of knotted Hamiltonian cycles in spatial graph embeddings.
//!
//! Everything is computed with exact rational arithmetic end to end:
//!
//! * [`geometry`] — straight-line embeddings on rational 3D points,
//!   general-position validation, generic planar projection and signed
//!   crossing extraction;
//! * [`graph`] — complete graphs, cycle families, and the combinatorial
//!   cycle counters ν₁ and ν₂ with their modular audit;
//! * [`diagram`] — signed Gauss codes for knots and two-component links,
//!   ζ′ values and linking numbers;
//! * [`knot`] — Conway polynomials by skein resolution, a₂ and Arf,
//!   a fast two-chord a₂ formula, crossing flips and smoothings;
//! * [`invariant`] — the per-embedding invariant μ, knotted-cycle census
//!   and the trichotomy classification of K₈ embeddings;
//! * [`harness`] — deterministic experiment drivers: random embeddings,
//!   invariance sweeps, crossing-flip consistency checks, and a simulated
//!   annealing search minimizing the knotted-cycle count.

pub mod diagram;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod invariant;
pub mod knot;

pub use geometry::PositionViolation;
use graph::EdgeId;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph needs at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("edge id {0} out of range")]
    UnknownEdge(EdgeId),
    #[error("edges {0} and {1} do not share a vertex")]
    NotAdjacent(EdgeId, EdgeId),
    #[error("edges {0} and {1} share a vertex")]
    NotDisjoint(EdgeId, EdgeId),
    #[error("edge arguments must be pairwise distinct")]
    EdgesNotDistinct,
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),
    #[error("projection direction must be nonzero")]
    ZeroDirection,
    #[error("general position violated: {0}")]
    Position(#[from] PositionViolation),
    #[error("no generic projection direction found for k <= {0}")]
    NoGenericDirection(u64),
    #[error("projection direction is not generic: {0}")]
    NonGenericDirection(String),
    #[error("embedding has {points} points but the graph has {vertices} vertices")]
    PointCountMismatch { points: usize, vertices: usize },
    #[error("cycles are not vertex-disjoint")]
    CyclesNotDisjoint,
    #[error("invalid Gauss code: {0}")]
    InvalidCode(String),
    #[error("crossing {0} not present in code")]
    UnknownCrossing(usize),
    #[error("code has {got} crossings, limit is {limit}")]
    TooManyCrossings { got: usize, limit: usize },
    #[error("operation requires a single-component code, got {0} components")]
    NotAKnot(usize),
    #[error("operation requires exactly two components, got {0}")]
    NotATwoComponentLink(usize),
    #[error("inter-component sign sum {0} is odd; linking number undefined")]
    NonIntegralLinking(i64),
    #[error("invalid embedding JSON: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("coordinate range {got} is below the floor {min} for n = {n}")]
    RangeTooSmall { got: i64, min: i64, n: usize },
    #[error("{0} consecutive rejections while sampling an embedding; coordinate range too small")]
    RejectionLimit(u32),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
