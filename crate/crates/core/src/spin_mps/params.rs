//! Spin-model parameters and the chain/ancilla site ordering.

use crate::error::{Error, Result};
use crate::scalar::{cv, Scalar};

/// Parameters of the open spin chain with two attached ancillas.
///
/// The chain Hamiltonian is `B sum sigma^z + sum (Jx xx + Jy yy + Jz zz)`
/// over nearest neighbors; each ancilla adds `Ba sigma^z` and couples to its
/// attachment site through `Ja sigma^x sigma^x`. Attachment sites are 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinModelParams<T: Scalar> {
    pub n: usize,
    pub field: T,
    pub jx: T,
    pub jy: T,
    pub jz: T,
    pub ancilla_field: T,
    pub ancilla_coupling: T,
    pub site_s: usize,
    pub site_r: usize,
}

impl<T: Scalar> SpinModelParams<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::InvalidParams(format!(
                "need at least 4 chain spins, got {}",
                self.n
            )));
        }
        if self.site_s < 1 || self.site_r <= self.site_s || self.site_r > self.n {
            return Err(Error::InvalidParams(format!(
                "attachment sites must satisfy 1 <= site_s < site_r <= n, got ({}, {})",
                self.site_s, self.site_r
            )));
        }
        if self.ancilla_coupling < T::zero() {
            return Err(Error::InvalidParams("Ja must be >= 0".into()));
        }
        if self.ancilla_field < T::zero() {
            return Err(Error::InvalidParams("Ba must be >= 0".into()));
        }
        Ok(())
    }

    /// True when the ancilla coupling sits inside the weak-coupling window
    /// `Ja <= 0.2 max(|B|, |Jx|, |Jy|, |Jz|)` the analytics assume.
    pub fn is_weakly_coupled(&self) -> bool {
        let scale = self
            .field
            .abs()
            .max(self.jx.abs())
            .max(self.jy.abs())
            .max(self.jz.abs());
        self.ancilla_coupling <= cv::<T>(0.2) * scale
    }

    /// Total site count including the two ancillas.
    pub fn sites(&self) -> usize {
        self.n + 2
    }

    pub fn ordering(&self) -> SiteOrdering {
        SiteOrdering::new(self.n, self.site_s, self.site_r)
    }
}

/// Physical identity of one site in the combined system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SiteLabel {
    /// Chain spin, 1-based index.
    Chain(usize),
    Sender,
    Receiver,
}

/// Linear ordering of the `n + 2` sites with the ancillas inserted right
/// after their attachment sites, plus the list of chain bonds that became
/// next-nearest (they span an ancilla and need swap gates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteOrdering {
    slots: Vec<SiteLabel>,
    /// Chain bonds `(i, i+1)` (1-based left site) whose endpoints are not
    /// adjacent in the ordering.
    swap_bonds: Vec<usize>,
}

impl SiteOrdering {
    pub fn new(n: usize, site_s: usize, site_r: usize) -> Self {
        let mut slots = Vec::with_capacity(n + 2);
        for i in 1..=n {
            slots.push(SiteLabel::Chain(i));
            if i == site_s {
                slots.push(SiteLabel::Sender);
            }
            if i == site_r {
                slots.push(SiteLabel::Receiver);
            }
        }
        let mut swap_bonds = Vec::new();
        if site_s < n {
            swap_bonds.push(site_s);
        }
        if site_r < n {
            swap_bonds.push(site_r);
        }
        SiteOrdering { slots, swap_bonds }
    }

    /// Ordering of the bare chain with no ancillas (site `i` on slot `i - 1`).
    pub fn new_chain_only(n: usize) -> Self {
        SiteOrdering {
            slots: (1..=n).map(SiteLabel::Chain).collect(),
            swap_bonds: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn label(&self, slot: usize) -> SiteLabel {
        self.slots[slot]
    }

    pub fn labels(&self) -> &[SiteLabel] {
        &self.slots
    }

    /// Slot of a physical site.
    pub fn slot(&self, label: SiteLabel) -> usize {
        self.slots
            .iter()
            .position(|&l| l == label)
            .expect("label must exist in the ordering")
    }

    /// Chain bonds (1-based left site) that span an ancilla.
    pub fn swap_bonds(&self) -> &[usize] {
        &self.swap_bonds
    }
}

/// Spin transfer regime relative to the chain's spectral gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinRegime {
    Virtual,
    Resonant,
    /// Within the `sqrt(2) Ja` energy-resolution band of the gap.
    Marginal,
}

impl std::fmt::Display for SpinRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpinRegime::Virtual => write!(f, "virtual"),
            SpinRegime::Resonant => write!(f, "resonant"),
            SpinRegime::Marginal => write!(f, "marginal"),
        }
    }
}

/// Classification outcome with the numbers it was based on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinRegimeReport<T: Scalar> {
    pub regime: SpinRegime,
    pub gap: T,
    pub gap_uncertainty: T,
    /// Ancilla excitation energy `2 Ba`.
    pub splitting: T,
    /// Energy-resolution band `sqrt(2) Ja`.
    pub resolution: T,
}
