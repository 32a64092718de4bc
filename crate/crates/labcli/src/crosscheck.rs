use quasizeno::hilbert::{build_site_operators, LinearConstraint};
use quasizeno::models::build_hamiltonian;
use quasizeno::numkernel::hermitian_eig;
use quasizeno::zeno::quasi_zeno_hamiltonian;
use quasizeno::ComplexMatrix;

use crate::error::LabResult;
use crate::presets::preset;
use crate::system::System;

/// The fig4 system on its unconstrained basis compared against the same
/// model built directly on the basis with N₂+N₃=1.
#[derive(Debug, Clone)]
pub struct Fig4CrossCheck {
    /// Dimension of the constrained basis.
    pub constrained_dim: usize,
    /// max |H_Z^(1) − W H_c W†| with W the basis inclusion.
    pub first_order_diff: f64,
    /// Spectrum of H_Z^(2) restricted to the constrained states.
    pub second_order_spectrum: Vec<f64>,
}

pub fn fig4_crosscheck() -> LabResult<Fig4CrossCheck> {
    let cfg = preset("fig4").expect("fig4 preset").config;
    let sys = System::prepare(&cfg)?;
    let mut constrained = cfg.model.clone();
    constrained.basis_constraint = Some(LinearConstraint { weights: vec![0, 1, 1, 0], target: 1 });
    let basis = constrained.build_basis()?;
    let ops = build_site_operators(&basis)?;
    let h_c = build_hamiltonian(&constrained, &ops)?;

    // Column k of W is the unconstrained basis vector with the same label.
    let index: Vec<usize> = basis
        .labels()
        .iter()
        .map(|l| sys.basis().index_of(l).expect("constrained label exists in the full basis"))
        .collect();
    let full = sys.basis().dim();
    let mut embedded = ComplexMatrix::zeros(full);
    for (a, &i) in index.iter().enumerate() {
        for (b, &j) in index.iter().enumerate() {
            embedded[(i, j)] = h_c[(a, b)];
        }
    }
    let p = sys.projector();
    let h1 = quasi_zeno_hamiltonian(&sys.hamiltonian, p, 1)?;
    let h2 = quasi_zeno_hamiltonian(&sys.hamiltonian, p, 2)?;
    let restricted = ComplexMatrix::from_fn(index.len(), |a, b| h2[(index[a], index[b])]);
    Ok(Fig4CrossCheck {
        constrained_dim: basis.dim(),
        first_order_diff: h1.max_abs_diff(&embedded),
        second_order_spectrum: hermitian_eig(&restricted)?.eigenvalues,
    })
}
