//! Partial-wave scattering of neutral polarizable atoms on an electrically
//! charged wire in a uniform magnetic field.
//!
//! The induced electric dipole of the atom turns the wire into a combined
//! attractive 1/ρ² potential plus an effective flux-like vector potential,
//! so the scattering is of Aharonov–Bohm type with a fall-to-center set of
//! partial waves. The crate computes per-channel S-matrices for totally
//! reflecting and totally absorbing wire models, assembles scattering
//! amplitudes (closed modified-AB part plus a rapidly converging correction
//! series with certified truncation bounds), and evaluates differential
//! cross sections and angular scans. A CLI (`abwire`) drives parameter
//! derivation, channel inspection, S-matrix tables, angular scans and the
//! standard two-panel small-angle figures.

pub mod amplitude;
pub mod cli;
mod error;
pub mod params;
pub mod smatrix;
pub mod specfun;
pub mod xsection;

pub use error::{Error, Result};
pub use specfun::Complex;
