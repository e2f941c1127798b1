use thiserror::Error;

use crate::liep::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("extension degree {0} exceeds the supported bound")]
    DegreeTooLarge(usize),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("duplicate abscissa in interpolation data")]
    DuplicateAbscissa,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("Lie p-algebra axioms violated: {0}")]
    AxiomViolation(Box<AxiomReport>),
    #[error("module axiom violated for basis pair ({0}, {1})")]
    ModuleAxiomViolation(usize, usize),
    #[error("dimension guard exceeded: {what} = {value} > {limit}")]
    DimensionGuard {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("module is not restricted")]
    NotRestricted,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("element is zero")]
    ZeroElement,
    #[error("elements are linearly dependent")]
    DependentPair,
    #[error("(x + t y)^[p]^n is not proportional to x + t y (witness t = {0:?})")]
    ProportionalityFailure(Vec<u32>),
    #[error("ad x is not nilpotent on y within the dimension bound")]
    NotAdNilpotent,
    #[error("no element with a relation free of the linear term was found")]
    WitnessNotFound,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
