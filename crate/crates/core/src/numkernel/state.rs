use num_complex::Complex64 as C64;

use super::{hermitian_eig, ComplexMatrix};
use crate::error::{Error, Result};

/// Pure state amplitudes. The norm is not forced to one: under stroboscopic
/// projection the squared norm carries the survival probability.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    norm_squared: f64,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument("state vector must be non-empty".into()));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix);
        }
        Ok(Self::from_amplitudes_unchecked(amplitudes))
    }

    pub(crate) fn from_amplitudes_unchecked(amplitudes: Vec<C64>) -> Self {
        let norm_squared = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        Self { amplitudes, norm_squared }
    }

    /// Computational basis vector |index>.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Self { amplitudes: amps, norm_squared: 1.0 }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.norm_squared
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared.sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        if self.norm_squared <= 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(C64::new(1.0 / self.norm(), 0.0)))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_amplitudes_unchecked(self.amplitudes.iter().map(|z| z * factor).collect())
    }

    /// <self|other>
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn apply(&self, op: &ComplexMatrix) -> Self {
        Self::from_amplitudes_unchecked(op.mat_vec(&self.amplitudes))
    }

    /// <ψ|O|ψ>, not divided by the norm.
    pub fn expectation(&self, op: &ComplexMatrix) -> C64 {
        let ov = op.mat_vec(&self.amplitudes);
        self.amplitudes.iter().zip(&ov).map(|(a, b)| a.conj() * b).sum()
    }

    /// Σ_i |ψ_i|² d_i for a real diagonal observable, divided by the norm.
    pub fn diagonal_expectation(&self, diag: &[f64]) -> f64 {
        assert_eq!(diag.len(), self.dim());
        let weighted: f64 = self.amplitudes.iter().zip(diag).map(|(a, d)| a.norm_sqr() * d).sum();
        weighted / self.norm_squared
    }

    /// |ψ><ψ|
    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Mixed state held as its eigen-decomposition Σ_k w_k |ψ_k><ψ_k|, so that
/// maps ρ → MρM† reduce to acting on each component.
#[derive(Debug, Clone)]
pub struct Mixture {
    components: Vec<(f64, StateVector)>,
}

impl Mixture {
    pub fn pure(state: StateVector) -> Self {
        Self { components: vec![(1.0, state)] }
    }

    /// Decomposes a density matrix, dropping eigenvalues below `cutoff`.
    pub fn from_density(rho: &ComplexMatrix, cutoff: f64) -> Result<Self> {
        let eig = hermitian_eig(rho)?;
        let components = eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > cutoff)
            .map(|(k, &w)| (w, StateVector::from_amplitudes_unchecked(eig.eigenvector(k))))
            .collect();
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(f64, StateVector)] {
        &self.components
    }

    pub fn apply(&self, op: &ComplexMatrix) -> Self {
        Self { components: self.components.iter().map(|(w, s)| (*w, s.apply(op))).collect() }
    }

    pub fn trace(&self) -> f64 {
        self.components.iter().map(|(w, s)| w * s.norm_squared()).sum()
    }

    pub fn density(&self) -> ComplexMatrix {
        let dim = self.components.first().map_or(1, |(_, s)| s.dim());
        let mut rho = ComplexMatrix::zeros(dim);
        for (w, s) in &self.components {
            rho += &s.density().scale_real(*w);
        }
        rho
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_norm_tracks_amplitudes() {
        let s = StateVector::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        assert!((s.norm_squared() - 1.0).abs() < 1e-15);
        let half = s.scale(C64::new(0.5, 0.0));
        assert!((half.norm_squared() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_state_cannot_be_normalized() {
        let s = StateVector::new(vec![C64::new(0.0, 0.0); 3]).unwrap();
        assert_eq!(s.normalized(), Err(Error::ZeroVector));
    }

    #[test]
    fn mixture_round_trips_density() {
        let a = StateVector::basis(3, 0);
        let b = StateVector::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0)])
            .unwrap()
            .normalized()
            .unwrap();
        let rho = &a.density().scale_real(0.25) + &b.density().scale_real(0.75);
        let mix = Mixture::from_density(&rho, 1e-14).unwrap();
        assert_eq!(mix.components().len(), 2);
        assert!(mix.density().max_abs_diff(&rho) < 1e-14);
        assert!((mix.trace() - 1.0).abs() < 1e-14);
    }
}
