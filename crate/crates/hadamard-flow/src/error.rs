use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a Hadamard point: potential {potential:.3e} exceeds tolerance {tol:.3e}")]
    NotHadamard { potential: f64, tol: f64 },

    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {diff:.3e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },

    #[error("cyclotomic order {n} exceeds the supported bound {bound}")]
    CyclotomicOverflow { n: u64, bound: u64 },

    #[error("unknown catalog entry '{name}'; available: {available}")]
    UnknownCatalogEntry { name: String, available: String },

    #[error("missing parameter assignment for '{0}'")]
    MissingParameter(String),

    #[error("defect methods disagree: flow kernel gives {flow}, linear system gives {linear}")]
    DefectMismatch { flow: usize, linear: usize },

    #[error("center basis does not span the kernel: {0}")]
    BasisMismatch(String),

    #[error("singular linear solve: {0}")]
    SingularSystem(String),

    #[error("subset search budget exceeded: {requested} candidate subsets, budget {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
