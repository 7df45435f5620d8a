use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge weight {0} is not strictly positive")]
    NonpositiveWeight(f64),
    #[error("{weights} weights given for {edges} edges")]
    WeightCountMismatch { edges: usize, weights: usize },
    #[error("size {got} is too small (need at least {min})")]
    SizeTooSmall { got: usize, min: usize },
    #[error("size {got} exceeds the supported maximum {max}")]
    SizeTooLarge { got: usize, max: usize },
    #[error("invalid circulant jump {jump} for n = {n}")]
    InvalidJump { jump: usize, n: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 1 modulo 4")]
    NotCongruentOneModFour(u64),
    #[error("operation requires a unit-weight graph")]
    WeightedInput,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("complement is disconnected")]
    ComplementDisconnected,
    #[error("no connected sample after {attempts} attempts (edge probability too small?)")]
    GiveUp { attempts: usize },
    #[error("reduced Laplacian is not numerically positive definite")]
    SingularSystem,
    #[error("perturbation of edge {{{i}, {j}}} is degenerate: 1 + delta * omega = {denominator}")]
    DegeneratePerturbation { i: usize, j: usize, denominator: f64 },
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(usize, usize),
    #[error("endpoints coincide ({0})")]
    SameVertex(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not a proper connected spanning subgraph: {0}")]
    NotSpanningSubgraph(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not circulant under its vertex labeling")]
    NotCirculant,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("corrupt certification run: {0}")]
    CorruptRun(String),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::CorruptRun(_) => ErrorClass::Parse,
            Error::SingularSystem | Error::DegeneratePerturbation { .. } => ErrorClass::Numerical,
            _ => ErrorClass::Precondition,
        }
    }
}
