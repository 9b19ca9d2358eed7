//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the simulation and analytics engines.
#[derive(Debug, Error)]
pub enum Error {
    /// Model parameters violate a validity constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The assembled potential matrix is not positive definite.
    #[error("unstable quadratic model: most negative eigenvalue {most_negative:e}")]
    Unstable { most_negative: f64 },

    /// An iterative procedure did not converge.
    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// Request exceeds the exact-diagonalization size cap.
    #[error("system of {spins} spins exceeds the dense oracle cap of {cap} spins")]
    SizeCap { spins: usize, cap: usize },

    /// Zero-mode divergence of the unpinned periodic chain.
    #[error("zero mode: ground-state covariance diverges for an unpinned chain (Omega0 = 0)")]
    ZeroMode,

    /// Ancilla frequency sits on a band edge where the density of states diverges.
    #[error("ancilla frequency {omega} within {window:e} of band edge {edge}; refusing output")]
    VanHove { omega: f64, edge: f64, window: f64 },

    /// Operation requested in the wrong dynamical regime.
    #[error("operation not applicable in the {regime} regime: {detail}")]
    WrongRegime { regime: &'static str, detail: String },

    /// Two supposedly equivalent computations disagree.
    #[error("consistency failure: {0}")]
    Inconsistent(String),

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: estimated error {error:e} above tolerance {tol:e}")]
    Quadrature { error: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
