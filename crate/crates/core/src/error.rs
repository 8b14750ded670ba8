use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient rings differ: {0} vs {1} variables")]
    RingMismatch(usize, usize),
    #[error("invalid ambient ring: {0}")]
    InvalidRing(String),
    #[error("monomial has {got} exponents but the ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("the zero ideal has no {0}")]
    ZeroIdeal(&'static str),
    #[error("the unit ideal is not a proper ideal")]
    UnitIdeal,
    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polarization needs {needed} variables, budget is {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph has no partition")]
    MissingPartition,
    #[error("family hypotheses violated: {}", .0.join("; "))]
    Hypotheses(Vec<String>),
    #[error("graph does not belong to a supported family: {0}")]
    Unclassifiable(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid Betti splitting: {0}")]
    Splitting(String),
    #[error("empty Betti table")]
    EmptyTable,
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
