use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numkernel::{hermitian_eig, hermitian_eig_with, ComplexMatrix, StateVector, Tolerances};

/// Default relative tolerance for merging observable eigenvalues.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Spectral decomposition A = Σ_j a_j P_j of a measured observable.
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    eigenvalues: Vec<f64>,
    projectors: Vec<ComplexMatrix>,
    observable: ComplexMatrix,
}

/// Groups the spectrum of `a` into measurement subspaces. Eigenvalues closer
/// than `degeneracy_tol · max|λ|` to their neighbour share a projector.
pub fn projectors_from_observable(a: &ComplexMatrix, degeneracy_tol: f64) -> Result<ProjectorSet> {
    if !(degeneracy_tol >= 0.0 && degeneracy_tol.is_finite()) {
        return Err(Error::InvalidArgument("degeneracy tolerance must be finite and >= 0".into()));
    }
    let eig = hermitian_eig(a)?;
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let threshold = degeneracy_tol * scale;

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if l - eig.eigenvalues[*g.last().unwrap()] <= threshold => g.push(k),
            _ => groups.push(vec![k]),
        }
    }

    let dim = a.dim();
    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    for g in groups {
        let mean = g.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / g.len() as f64;
        let mut p = ComplexMatrix::zeros(dim);
        for &k in &g {
            let v = eig.eigenvector(k);
            p += &ComplexMatrix::outer(&v, &v);
        }
        eigenvalues.push(mean);
        projectors.push(p);
    }
    Ok(ProjectorSet { eigenvalues, projectors, observable: a.clone() })
}

impl ProjectorSet {
    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.observable.dim()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn projector(&self, k: usize) -> &ComplexMatrix {
        &self.projectors[k]
    }

    pub fn observable(&self) -> &ComplexMatrix {
        &self.observable
    }

    /// Index of the subspace with eigenvalue closest to `value`.
    pub fn index_of_eigenvalue(&self, value: f64) -> usize {
        let mut best = 0;
        for (k, l) in self.eigenvalues.iter().enumerate() {
            if (l - value).abs() < (self.eigenvalues[best] - value).abs() {
                best = k;
            }
        }
        best
    }

    /// The subspace holding `state`, or the leakage out of the best candidate.
    pub fn subspace_of(&self, state: &StateVector, tol: f64) -> Result<usize> {
        let norm = state.norm_squared();
        if norm <= 0.0 {
            return Err(Error::ZeroVector);
        }
        let mut best = (0, f64::INFINITY);
        for (k, p) in self.projectors.iter().enumerate() {
            let leakage = 1.0 - state.apply(p).norm_squared() / norm;
            if leakage < best.1 {
                best = (k, leakage);
            }
        }
        if best.1 > tol {
            return Err(Error::StateOutsideSubspace { leakage: best.1 });
        }
        Ok(best.0)
    }

    pub fn subspace(&self, k: usize) -> Result<Subspace> {
        Subspace::from_projector(&self.projectors[k])
    }
}

/// Checks that `p` is a Hermitian idempotent.
pub fn check_projector(p: &ComplexMatrix, tol: f64) -> Result<()> {
    if !p.is_finite() {
        return Err(Error::InvalidMatrix);
    }
    let idem = (&(p * p) - p).norm_fro();
    let herm = p.hermiticity_error();
    let deviation = idem.max(herm);
    if deviation > tol {
        return Err(Error::NotProjector { deviation });
    }
    Ok(())
}

/// Orthonormal basis V of the range of a projector, so that P = V V†.
#[derive(Debug, Clone)]
pub struct Subspace {
    dim: usize,
    columns: Vec<Vec<C64>>,
}

impl Subspace {
    pub fn from_projector(p: &ComplexMatrix) -> Result<Self> {
        let tol = Tolerances::default();
        check_projector(p, tol.projector)?;
        let eig = hermitian_eig_with(&p.hermitian_part(), &tol)?;
        let columns = (0..p.dim()).filter(|&k| eig.eigenvalues[k] > 0.5).map(|k| eig.eigenvector(k)).collect();
        Ok(Self { dim: p.dim(), columns })
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Rank of the projector.
    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<C64>] {
        &self.columns
    }

    /// V† M V
    pub fn compress(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(m.dim(), self.dim);
        let mv: Vec<Vec<C64>> = self.columns.iter().map(|c| m.mat_vec(c)).collect();
        ComplexMatrix::from_fn(self.rank(), |i, j| self.columns[i].iter().zip(&mv[j]).map(|(a, b)| a.conj() * b).sum())
    }

    /// V M V†
    pub fn embed(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(m.dim(), self.rank());
        let mut out = ComplexMatrix::zeros(self.dim);
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let mij = m[(i, j)];
                if mij == C64::new(0.0, 0.0) {
                    continue;
                }
                for (r, a) in self.columns[i].iter().enumerate() {
                    for (c, b) in self.columns[j].iter().enumerate() {
                        out[(r, c)] += a * mij * b.conj();
                    }
                }
            }
        }
        out
    }

    /// V† ψ
    pub fn compress_state(&self, state: &StateVector) -> StateVector {
        let amps =
            self.columns.iter().map(|c| c.iter().zip(state.amplitudes()).map(|(a, b)| a.conj() * b).sum()).collect();
        StateVector::from_amplitudes_unchecked(amps)
    }

    /// V φ
    pub fn embed_state(&self, state: &StateVector) -> StateVector {
        let mut amps = vec![C64::new(0.0, 0.0); self.dim];
        for (c, x) in self.columns.iter().zip(state.amplitudes()) {
            for (o, a) in amps.iter_mut().zip(c) {
                *o += a * x;
            }
        }
        StateVector::from_amplitudes_unchecked(amps)
    }
}
