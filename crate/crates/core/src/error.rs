use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("Gamma pole at argument {arg}")]
    GammaPole { arg: f64 },

    #[error("series {name} did not converge within {max_terms} terms (last term {last_term:e}, partial sum {partial:e})")]
    NonConvergence {
        name: &'static str,
        max_terms: usize,
        last_term: f64,
        partial: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("seed solution has a node at x = {x} (|u| = {magnitude:e})")]
    SeedNode { x: f64, magnitude: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("Wronskian node near x = {x}: transformation is singular")]
    WronskianNode { x: f64 },

    #[error("Riccati chain singular at level {level}, x = {x}")]
    RiccatiSingular { level: usize, x: f64 },

    #[error("coherent state truncation: tail mass {tail:e} not below {tol:e} at n_max = {n_max}")]
    Truncation { tail: f64, tol: f64, n_max: usize },

    #[error("rational factorization energy {index} ({rational}) disagrees with stored value {stored}")]
    RationalMismatch {
        index: usize,
        rational: String,
        stored: f64,
    },

    #[error("state is not cyclic under a partial loop: isolated-level weight {weight:e}")]
    NotCyclic { weight: f64 },

    #[error("state is not normalized: norm² = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("independent routes disagree for {what}: {a} vs {b}")]
    Mismatch { what: String, a: f64, b: f64 },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
