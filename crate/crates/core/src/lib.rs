//! Quasi-Zeno dynamics of frequently, projectively measured quantum systems.
//!
//! The crate builds measured observables and Hamiltonians for small spin and
//! lattice-boson systems, derives the quasi-Zeno Hamiltonians
//! `H_Z^(k) = P H ((I − P) H)^(k−1) P` for a measurement subspace `P`, and
//! evolves states three ways: exactly, as the stroboscopic product
//! `(P exp(−iHδt))^N`; effectively, under `exp(−i H_eff τ)`; and in the
//! standard Zeno limit under `H_Z^(1)` alone.

pub mod error;
pub mod hilbert;
pub mod models;
pub mod numkernel;
pub mod zeno;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use numkernel::{ComplexMatrix, StateVector};
