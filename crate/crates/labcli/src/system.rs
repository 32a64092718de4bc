use num_complex::Complex64 as C64;
use quasizeno::hilbert::{build_site_operators, Basis, BasisKind, SiteOperatorSet};
use quasizeno::models::{build_hamiltonian, build_observable, ModelKind};
use quasizeno::numkernel::Tolerances;
use quasizeno::zeno::{projectors_from_observable, ProjectorSet, Subspace, DEFAULT_DEGENERACY_TOL};
use quasizeno::{ComplexMatrix, StateVector};

use crate::config::{ExperimentConfig, InitialState};
use crate::error::{LabError, LabResult};

/// Everything a run needs, built once from a config.
#[derive(Debug, Clone)]
pub struct System {
    pub ops: SiteOperatorSet,
    pub hamiltonian: ComplexMatrix,
    pub observable: ComplexMatrix,
    pub projectors: ProjectorSet,
    /// Index of the measurement subspace holding the initial state.
    pub subspace_index: usize,
    pub subspace: Subspace,
    /// Normalized initial state.
    pub psi0: StateVector,
    /// Column names for the per-site readout.
    pub columns: Vec<String>,
    /// Diagonal of each per-site readout operator.
    pub readouts: Vec<Vec<f64>>,
}

impl System {
    pub fn prepare(config: &ExperimentConfig) -> LabResult<Self> {
        config.validate()?;
        let basis = config.model.build_basis().map_err(|e| LabError::config("model", e))?;
        let ops = build_site_operators(&basis).map_err(|e| LabError::config("model", e))?;
        let hamiltonian = build_hamiltonian(&config.model, &ops).map_err(|e| LabError::config("model", e))?;
        let observable = build_observable(&config.observable, &ops).map_err(|e| LabError::config("observable", e))?;
        let projectors = projectors_from_observable(&observable, DEFAULT_DEGENERACY_TOL)?;
        let psi0 = initial_state(&config.initial_state, &basis)?;
        let subspace_index = projectors
            .subspace_of(&psi0, Tolerances::default().subspace_support)
            .map_err(|e| LabError::config("initial_state", format!("not in a single measurement subspace ({e})")))?;
        let subspace = projectors.subspace(subspace_index)?;
        let (columns, readouts) = readouts(&config.model.kind, &ops)?;
        Ok(Self { ops, hamiltonian, observable, projectors, subspace_index, subspace, psi0, columns, readouts })
    }

    pub fn basis(&self) -> &Basis {
        self.ops.basis()
    }

    pub fn projector(&self) -> &ComplexMatrix {
        self.projectors.projector(self.subspace_index)
    }

    /// Per-site expectation values, normalized by the state norm.
    pub fn read(&self, state: &StateVector) -> Vec<f64> {
        if state.norm_squared() <= 0.0 {
            return vec![f64::NAN; self.readouts.len()];
        }
        self.readouts.iter().map(|d| state.diagonal_expectation(d)).collect()
    }
}

fn initial_state(spec: &InitialState, basis: &Basis) -> LabResult<StateVector> {
    match spec {
        InitialState::Label { label } => {
            let k = basis.index_of_values(label).ok_or_else(|| {
                LabError::config("initial_state", format!("label {label:?} is not in the model basis"))
            })?;
            Ok(StateVector::basis(basis.dim(), k))
        }
        InitialState::Amplitudes { amplitudes } => {
            if amplitudes.len() != basis.dim() {
                return Err(LabError::config(
                    "initial_state",
                    format!("expected {} amplitudes, got {}", basis.dim(), amplitudes.len()),
                ));
            }
            let amps = amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
            StateVector::new(amps).and_then(|s| s.normalized()).map_err(|e| LabError::config("initial_state", e))
        }
    }
}

fn diag(m: &ComplexMatrix) -> Vec<f64> {
    m.diagonal().iter().map(|z| z.re).collect()
}

fn readouts(kind: &ModelKind, ops: &SiteOperatorSet) -> LabResult<(Vec<String>, Vec<Vec<f64>>)> {
    let basis = ops.basis();
    let sites = basis.sites();
    Ok(match (kind, basis.kind()) {
        (_, BasisKind::Spin1Single) => {
            let names = basis.labels().iter().map(|l| format!("pop_{}", l.values()[0])).collect();
            let diags =
                (0..basis.dim()).map(|k| (0..basis.dim()).map(|j| if j == k { 1.0 } else { 0.0 }).collect()).collect();
            (names, diags)
        }
        (_, BasisKind::SpinHalfChain) => (
            (0..sites).map(|s| format!("sz_{s}")).collect(),
            (0..sites).map(|s| ops.sz(s).map(diag)).collect::<Result<_, _>>()?,
        ),
        _ => (
            (0..sites).map(|s| format!("n_{s}")).collect(),
            (0..sites).map(|s| ops.number(s).map(diag)).collect::<Result<_, _>>()?,
        ),
    })
}
