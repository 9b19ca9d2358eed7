//! Simulation and analytics of excitation transfer between two ancillas
//! weakly coupled to a gapped quantum chain.
//!
//! The crate contains three engines and their shared plumbing:
//!
//! * [`spin_mps`] — matrix-product-state (TEBD) dynamics of a spin chain with
//!   two embedded spin ancillas,
//! * [`harmonic_gaussian`] — exact covariance-matrix dynamics of a periodic
//!   harmonic chain with two oscillator ancillas,
//! * [`master_analytics`] — the weak-coupling master-equation coefficients and
//!   closed-form occupation solutions for the harmonic model,
//! * [`oracles`] — independent brute-force references (dense diagonalization,
//!   exact statevector propagation, finite-size mode sums) used to validate
//!   the engines.
//!
//! All numerics are generic over the real scalar type through the [`Scalar`]
//! trait; `f64` aliases for the main state types live at the crate root.

pub mod error;
pub mod harmonic_gaussian;
pub mod master_analytics;
pub mod oracles;
pub mod quad;
pub mod scalar;
pub mod spin_mps;
pub mod timeseries;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` matrix product state.
pub type Mps64 = spin_mps::MatrixProductState<f64>;
/// `f64` spin-model parameter set.
pub type SpinModelParams64 = spin_mps::SpinModelParams<f64>;
/// `f64` Gaussian state.
pub type GaussianState64 = harmonic_gaussian::GaussianState<f64>;
/// `f64` harmonic-model parameter set.
pub type HarmonicModelParams64 = harmonic_gaussian::HarmonicModelParams<f64>;
/// `f64` asymptotic master coefficients.
pub type MasterCoefficients64 = master_analytics::MasterCoefficients<f64>;
/// `f64` time series.
pub type TimeSeries64 = timeseries::TimeSeries<f64>;
