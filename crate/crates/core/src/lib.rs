//! Photon statistics of two-mode Janus states: coherent superpositions of two
//! two-mode squeezed vacua.
//!
//! Closed-form kernels and coherences live in [`polynomials`], [`tmss`] and
//! [`coherence`]; [`fock`] is a brute-force truncated Fock-space engine that
//! every closed form is checked against.

pub mod coherence;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod expm;
pub mod fock;
pub mod heatmap;
pub mod params;
pub mod polynomials;
pub mod sweep;
pub mod tmss;
pub mod verify;
pub mod wigner;

pub use error::{JanusError, Result};
pub use params::{JanusConfig, SqueezeParam};
