//! Hamiltonian term lists for the spin model.

use super::params::{SiteLabel, SpinModelParams};
use crate::error::Result;
use crate::scalar::Scalar;

/// One additive piece of the spin Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HamiltonianTerm<T: Scalar> {
    /// `strength * sigma^z` on one site.
    Field { site: SiteLabel, strength: T },
    /// `jx xx + jy yy + jz zz` on a pair of sites.
    Bond {
        a: SiteLabel,
        b: SiteLabel,
        jx: T,
        jy: T,
        jz: T,
    },
}

impl<T: Scalar> HamiltonianTerm<T> {
    /// Sites the term acts on.
    pub fn support(&self) -> Vec<SiteLabel> {
        match *self {
            HamiltonianTerm::Field { site, .. } => vec![site],
            HamiltonianTerm::Bond { a, b, .. } => vec![a, b],
        }
    }
}

/// Terms of the full Hamiltonian: chain fields and bonds, ancilla fields,
/// and the two `Ja sigma^x sigma^x` ancilla bonds.
pub fn build_hamiltonian_terms<T: Scalar>(
    params: &SpinModelParams<T>,
) -> Result<Vec<HamiltonianTerm<T>>> {
    params.validate()?;
    let mut terms = chain_terms_unchecked(params);
    for (ancilla, site) in [
        (SiteLabel::Sender, params.site_s),
        (SiteLabel::Receiver, params.site_r),
    ] {
        terms.push(HamiltonianTerm::Field {
            site: ancilla,
            strength: params.ancilla_field,
        });
        terms.push(HamiltonianTerm::Bond {
            a: ancilla,
            b: SiteLabel::Chain(site),
            jx: params.ancilla_coupling,
            jy: T::zero(),
            jz: T::zero(),
        });
    }
    Ok(terms)
}

/// Terms of the chain alone (no ancillas), used for ground-state preparation
/// and gap estimation.
pub fn chain_only_terms<T: Scalar>(params: &SpinModelParams<T>) -> Result<Vec<HamiltonianTerm<T>>> {
    params.validate()?;
    Ok(chain_terms_unchecked(params))
}

fn chain_terms_unchecked<T: Scalar>(params: &SpinModelParams<T>) -> Vec<HamiltonianTerm<T>> {
    let mut terms = Vec::with_capacity(2 * params.n + 3);
    for i in 1..=params.n {
        terms.push(HamiltonianTerm::Field {
            site: SiteLabel::Chain(i),
            strength: params.field,
        });
    }
    for i in 1..params.n {
        terms.push(HamiltonianTerm::Bond {
            a: SiteLabel::Chain(i),
            b: SiteLabel::Chain(i + 1),
            jx: params.jx,
            jy: params.jy,
            jz: params.jz,
        });
    }
    terms
}
