use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("degenerate fusion input: {0}")]
    DegenerateFusion(String),

    #[error("degenerate normalization: |z| = {0:.3e} (S undefined, use Y/Omega only)")]
    DegenerateNormalization(f64),

    #[error("degeneracy dichotomy violated at label {label}: row sum {value:.6e}, expected 0 or {expected:.6e}")]
    DichotomyViolation { label: usize, value: f64, expected: f64 },

    #[error("search budget of {budget} nodes exhausted ({free_cells} free cells after T-filter)")]
    BudgetExhausted { budget: u64, free_cells: usize },

    #[error("graph is not a McKay graph: negative coefficient n_{j}^{vertex} = {value}")]
    NotMcKay { j: usize, vertex: usize, value: i64 },

    #[error("no (r, s) pair certifies the series: {0}")]
    NoKostantPair(String),

    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("subsystem not Y-closed: label {label} has residual {residual:.3e}")]
    NotYClosed { label: usize, residual: f64 },

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
