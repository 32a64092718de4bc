//! Dense complex linear algebra: matrices, states, the matrix exponential and
//! Hermitian eigendecomposition.

mod eig;
mod expm;
mod matrix;
mod state;

pub use eig::{hermitian_eig, hermitian_eig_with, HermitianEigen};
pub use expm::{mat_exp, propagator};
pub use matrix::ComplexMatrix;
pub use state::{Mixture, StateVector};

/// Numerical thresholds for precondition checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed ‖M − M†‖_F relative to ‖M‖_F.
    pub hermiticity: f64,
    /// Allowed ‖P² − P‖_F and ‖P − P†‖_F.
    pub projector: f64,
    /// Allowed weight of a state outside its claimed subspace.
    pub subspace_support: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { hermiticity: 1e-10, projector: 1e-10, subspace_support: 1e-8 }
    }
}
