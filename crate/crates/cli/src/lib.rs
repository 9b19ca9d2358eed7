//! Experiment harness: configuration parsing, presets, CSV emission, and the
//! cross-module verification suite for the gapped-chain transfer simulations.

pub mod config;
pub mod csv;
pub mod presets;
pub mod run;
pub mod verify;
