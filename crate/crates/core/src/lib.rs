//! Numerical kernels for the Boussinesq dispersive propagator.
//!
//! The crate is `no_std + alloc`: everything here is pure computation on
//! in-memory data. File formats, CLI plumbing, and parallel orchestration
//! live in the companion `bsq-lab` crate.
//!
//! Module map:
//! - [`grid`] — uniform-grid signals, FFT in the `f̂(ξ)=∫e^{−ixξ}f dx`
//!   convention, Sobolev norms, low/high band split;
//! - [`symbol`] — the dispersion phase `Φ(ξ)=|ξ|√(1+ξ²)`, derivatives,
//!   stationary points, focusing times;
//! - [`propagator`] — the evolution `B_t` and its Gaussian truncation
//!   `B_t^N`, a direct-quadrature oracle, maximal (time-sup) scans;
//! - [`wavepacket`] — focusing wave packets and the divergence witness;
//! - [`oscillatory`] — kernel-decay probes and van der Corput checks;
//! - [`measures`] — discrete α-dimensional measures, energies, maximal
//!   ratios, and the lower-bound scaling scan;
//! - [`hankel`] — Bessel functions and radial (dimension n ≥ 2) evaluation.
//!
//! Supporting machinery: [`quad`] (Filon-type oscillatory quadrature driven
//! by [`dd`] double-double phase arithmetic), [`fit`] (power-law fits),
//! [`rng`] (counter-based deterministic random numbers), [`bump`] (smooth
//! cutoff functions).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bump;
pub mod dd;
pub mod error;
pub mod fit;
pub mod grid;
pub mod hankel;
pub mod measures;
pub mod oscillatory;
pub mod propagator;
pub mod quad;
pub mod rng;
pub mod symbol;
pub mod wavepacket;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
