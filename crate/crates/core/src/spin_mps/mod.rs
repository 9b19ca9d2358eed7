//! Spin chain plus two spin ancillas: model definition, matrix-product-state
//! representation, and TEBD time evolution.

mod mps;
mod params;
mod svd;
mod tebd;
mod terms;

pub use mps::{ops, MatrixProductState};
pub use params::{SiteLabel, SiteOrdering, SpinModelParams, SpinRegime, SpinRegimeReport};
pub use tebd::{
    joint_ancilla_probs, total_energy,
    evolve_tebd, ground_state_chain, initial_energy_variance, prepare_initial, EvolveOptions,
    GroundStateOptions, TrotterScheme,
};
pub use terms::{build_hamiltonian_terms, chain_only_terms, HamiltonianTerm};

use crate::error::Result;
use crate::oracles;
use crate::scalar::{cv, Scalar};

/// Probabilities of the four joint ancilla basis states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaProbabilities<T: Scalar> {
    pub p_uu: T,
    pub p_ud: T,
    pub p_du: T,
    pub p_dd: T,
}

impl<T: Scalar> AncillaProbabilities<T> {
    pub fn sum(&self) -> T {
        self.p_uu + self.p_ud + self.p_du + self.p_dd
    }

    /// Probability closure check: each entry in [0, 1], sum within `tol` of 1.
    pub fn is_normalized(&self, tol: T) -> bool {
        let in_range = |p: T| p >= -tol && p <= T::one() + tol;
        in_range(self.p_uu)
            && in_range(self.p_ud)
            && in_range(self.p_du)
            && in_range(self.p_dd)
            && (self.sum() - T::one()).abs() <= tol
    }
}

/// Compare the ancilla excitation energy `2 Ba` against the chain's spectral
/// gap, with the initial-state energy spread `sqrt(2) Ja` as resolution band.
///
/// The gap comes from the exact-diagonalization oracle with finite-size
/// extrapolation; its uncertainty is carried into the report.
pub fn classify_spin_regime<T: Scalar>(params: &SpinModelParams<T>) -> Result<SpinRegimeReport<T>> {
    params.validate()?;
    let gap = oracles::finite_chain_gap(params, &oracles::DEFAULT_GAP_SIZES)?;
    let splitting = cv::<T>(2.0) * params.ancilla_field;
    let band = cv::<T>(2.0).sqrt() * params.ancilla_coupling;
    let regime = if splitting + band < gap.gap {
        SpinRegime::Virtual
    } else if splitting - band > gap.gap {
        SpinRegime::Resonant
    } else {
        SpinRegime::Marginal
    };
    Ok(SpinRegimeReport {
        regime,
        gap: gap.gap,
        gap_uncertainty: gap.uncertainty,
        splitting,
        resolution: band,
    })
}
