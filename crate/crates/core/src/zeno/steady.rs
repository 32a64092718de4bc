use super::hamiltonians::QuasiZenoStack;
use super::projectors::Subspace;
use crate::error::{Error, Result};
use crate::numkernel::{hermitian_eig, StateVector};

/// Spectrum of H_Z^(2) on the measurement subspace. The lowest-eigenvalue
/// states are the ones the measured dynamics relaxes towards.
#[derive(Debug, Clone)]
pub struct SteadyStates {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Normalized eigenvectors in the full space, one per eigenvalue.
    pub eigenvectors: Vec<StateVector>,
    /// Indices of eigenvalues degenerate with the lowest one.
    pub candidates: Vec<usize>,
}

pub fn steady_state_analysis(stack: &QuasiZenoStack) -> Result<SteadyStates> {
    if stack.order() < 2 {
        return Err(Error::InvalidArgument("steady-state analysis needs a stack with order >= 2".into()));
    }
    let sub = Subspace::from_projector(stack.projector())?;
    if sub.rank() == 0 {
        return Err(Error::EmptyBasis);
    }
    let restricted = sub.compress(stack.h_z(2)).hermitian_part();
    let eig = hermitian_eig(&restricted)?;
    let eigenvectors = (0..sub.rank())
        .map(|k| StateVector::new(eig.eigenvector(k)).map(|v| sub.embed_state(&v)))
        .collect::<Result<Vec<_>>>()?;
    let lowest = eig.eigenvalues[0];
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs())).max(f64::MIN_POSITIVE);
    let candidates = (0..sub.rank()).filter(|&k| eig.eigenvalues[k] - lowest <= 1e-9 * scale).collect();
    Ok(SteadyStates { eigenvalues: eig.eigenvalues, eigenvectors, candidates })
}
