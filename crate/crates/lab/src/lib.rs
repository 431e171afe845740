//! Experiment harness for the Boussinesq propagator laboratory.
//!
//! The library side carries everything the binary needs: the flat
//! `key = value` configuration format with per-experiment typed schemas
//! ([`config`]), the report model with CSV tables, a JSON manifest and a
//! plain-text summary ([`report`]), the error taxonomy that maps onto exit
//! codes ([`error`]), and the experiment pipelines themselves
//! ([`experiments`]).
//!
//! Determinism contract: given the same experiment, configuration, and
//! seed, every emitted artifact is byte-identical regardless of the worker
//! thread count — parallel fan-out only ever runs over order-preserving
//! indexed maps, and all randomness flows through counter-based streams.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;
