//! Svetlichny values of three-qubit states and trade-off bounds on the
//! three-qubit reductions of four-qubit and n-qubit pure states.
//!
//! States are dense: a pure state on `n` qubits is a vector of `2^n`
//! amplitudes with qubit 0 the most significant bit of the basis index.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod correlations;
pub mod error;
pub mod linalg;
pub mod qstate;
pub mod sampling;
pub mod svetlichny;
pub mod tolerance;
pub mod tradeoff;

pub use error::{Error, Result};
