use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid map coefficients: {0}")]
    InvalidMap(String),

    /// A parameter lies outside the range where the quantity is defined.
    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("map derivative vanished at {at} (|φ′| = {modulus:e})")]
    VanishingDerivative { at: Complex64, modulus: f64 },

    #[error("preimage {0} lies outside the open unit disk")]
    OutsideDisk(Complex64),

    /// ‖z̄‖² − ‖f‖² came out clearly negative; the map is not univalent or
    /// the inputs are corrupt.
    #[error("negative discriminant {0:e} in the content formula")]
    NegativeDiscriminant(f64),

    #[error("Gram matrix condition number {condition:e} exceeds the limit {limit:e}")]
    IllConditionedGram { condition: f64, limit: f64 },

    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("no grid node falls inside the domain")]
    EmptyMask,

    #[error("grid too coarse: {0} interior nodes, need at least {min}", min = crate::oracle::fd::MIN_INTERIOR_NODES)]
    GridTooCoarse(usize),

    #[error("conjugate gradients stalled at relative residual {residual:e} after {iterations} iterations")]
    SolverDivergence { iterations: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
