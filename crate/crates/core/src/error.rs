use crate::graph::NonNullWitness;

/// Errors reported by instance construction, oracles and solvers.
///
/// Everything here is a usage error: the caller handed in operands that
/// violate a documented precondition. Solvers signal "no solution" through
/// their return value, never through this type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("operands belong to different groups")]
    MixedOracle,
    #[error("unknown generator g{0}")]
    UnknownGenerator(u32),
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("invalid group parameters: {0}")]
    InvalidGroup(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("no arc ({0}, {1})")]
    MissingArc(usize, usize),
    #[error("empty walk")]
    EmptyWalk,
    #[error("need at least two terminals")]
    TooFewTerminals,
    #[error("special edge ({0}, {1}) is not an edge of the graph")]
    MissingSpecialEdge(usize, usize),
    #[error("graph with {0} vertices exceeds the brute-force guard of {1}")]
    GuardExceeded(usize, usize),
    #[error("deleting the held solution leaves a non-null cycle")]
    InfeasibleHeldSolution(NonNullWitness),
    #[error("instance is not untangled: arc ({0}, {1}) outside Z has a non-identity label")]
    NotUntangled(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
