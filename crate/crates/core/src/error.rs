use thiserror::Error;

/// Errors produced by graph construction, generation and the exact solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum IimError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("choice length {got} does not match vertex count {expected}")]
    ChoiceLength { expected: usize, got: usize },

    #[error("enumeration needs {bits} choice bits, budget is {budget}")]
    BudgetExceeded { bits: usize, budget: usize },

    #[error("{solver} limited to {limit} vertices, graph has {n}")]
    SizeLimit {
        solver: &'static str,
        limit: usize,
        n: usize,
    },

    #[error("graph has isolated vertex {0}")]
    IsolatedVertex(usize),

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("no anticlone present in the graph")]
    NoAnticlone,

    #[error("graph is complete; no non-adjacent pair exists")]
    CompleteGraph,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("coloring is not proper: edge {0}-{1} is monochromatic")]
    ImproperColoring(usize, usize),

    #[error("invalid non-adjacent triple: {0}")]
    InvalidTriple(String),

    #[error("ladder witness condition {condition} fails: {detail}")]
    LadderCondition { condition: u8, detail: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("search budget of {0} nodes exhausted")]
    SearchBudget(u64),
}

pub type Result<T> = std::result::Result<T, IimError>;
