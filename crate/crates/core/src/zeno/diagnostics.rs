use super::evolution::{effective_evolution, exact_step};
use super::hamiltonians::{effective_hamiltonian, quasi_zeno_hamiltonian};
use super::projectors::check_projector;
use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, Mixture, StateVector, Tolerances};

/// Default per-step Zeno-locking value above which a run is flagged.
pub const DEFAULT_ZENO_WARN_THRESHOLD: f64 = 0.1;

fn check_support(state: &StateVector, p: &ComplexMatrix, tol: f64) -> Result<()> {
    if state.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: state.dim() });
    }
    let norm = state.norm_squared();
    if norm <= 0.0 {
        return Err(Error::ZeroVector);
    }
    let leakage = 1.0 - state.apply(p).norm_squared() / norm;
    if leakage > tol {
        return Err(Error::StateOutsideSubspace { leakage });
    }
    Ok(())
}

/// ‖Q H ψ‖² / ‖ψ‖², i.e. Tr(Q H ρ H) for the normalized ρ = |ψ><ψ|.
fn leakage_rate(h: &ComplexMatrix, state: &StateVector, q: &ComplexMatrix) -> f64 {
    state.apply(h).apply(q).norm_squared() / state.norm_squared()
}

/// Tr((I − P) H ρ H) δt², the probability of leaving P in one step to
/// leading order. The state is normalized internally.
pub fn zeno_locking_metric(h: &ComplexMatrix, state: &StateVector, p: &ComplexMatrix, dt: f64) -> Result<f64> {
    let tol = Tolerances::default();
    check_projector(p, tol.projector)?;
    check_support(state, p, tol.subspace_support)?;
    let q = &ComplexMatrix::identity(p.dim()) - p;
    Ok(leakage_rate(h, state, &q) * dt * dt)
}

/// Mixed-state version of [`zeno_locking_metric`].
pub fn zeno_locking_metric_mixed(h: &ComplexMatrix, rho: &Mixture, p: &ComplexMatrix, dt: f64) -> Result<f64> {
    let trace = rho.trace();
    if trace <= 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut acc = 0.0;
    for (w, s) in rho.components() {
        if s.norm_squared() > 0.0 {
            acc += w * s.norm_squared() * zeno_locking_metric(h, s, p, dt)?;
        }
    }
    Ok(acc / trace)
}

/// Tr(H ρ H Q) δt² for a target subspace Q.
pub fn transition_probability(h: &ComplexMatrix, state: &StateVector, q: &ComplexMatrix, dt: f64) -> Result<f64> {
    check_projector(q, Tolerances::default().projector)?;
    if state.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: state.dim() });
    }
    if state.norm_squared() <= 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(leakage_rate(h, state, q) * dt * dt)
}

/// ‖U_n ψ₀‖² for n = 0..=N along the exact stroboscopic evolution.
pub fn survival_exact_curve(
    h: &ComplexMatrix,
    p: &ComplexMatrix,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(psi0.norm_squared());
    if steps == 0 {
        return Ok(out);
    }
    let u1 = exact_step(h, p, dt)?;
    let mut psi = psi0.clone();
    for _ in 0..steps {
        psi = psi.apply(&u1);
        out.push(psi.norm_squared());
    }
    Ok(out)
}

/// The exact survival probability ‖U_N ψ₀‖².
pub fn survival_exact(h: &ComplexMatrix, p: &ComplexMatrix, psi0: &StateVector, dt: f64, steps: usize) -> Result<f64> {
    Ok(*survival_exact_curve(h, p, psi0, dt, steps)?.last().unwrap())
}

/// The product estimate Π_n (1 − Tr(H_Z^(2) ρ_n) δt²) for n = 0..=N, where
/// ρ_n is the normalized effective-evolution state at the start of step n.
/// This is a perturbative approximation to the exact survival.
pub fn survival_product_curve(
    h: &ComplexMatrix,
    p: &ComplexMatrix,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
    order: usize,
) -> Result<Vec<f64>> {
    let tol = Tolerances::default();
    check_support(psi0, p, tol.subspace_support)?;
    let h2 = &quasi_zeno_hamiltonian(h, p, 2)?;
    let step = effective_evolution(&effective_hamiltonian(h, p, dt, order)?, dt)?;
    let mut out = Vec::with_capacity(steps + 1);
    let mut survival = 1.0;
    out.push(survival);
    let mut psi = psi0.normalized()?;
    for _ in 0..steps {
        let leak = psi.expectation(h2).re * dt * dt;
        survival *= (1.0 - leak).max(0.0);
        out.push(survival);
        psi = psi.apply(&step).normalized()?;
    }
    Ok(out)
}

pub fn survival_product(
    h: &ComplexMatrix,
    p: &ComplexMatrix,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
    order: usize,
) -> Result<f64> {
    Ok(*survival_product_curve(h, p, psi0, dt, steps, order)?.last().unwrap())
}

/// P_new H P_old ψ, unnormalized; its squared norm times δt² is the
/// probability of the switch.
pub fn subspace_switch(
    state: &StateVector,
    p_old: &ComplexMatrix,
    p_new: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<StateVector> {
    let tol = Tolerances::default();
    check_projector(p_old, tol.projector)?;
    check_projector(p_new, tol.projector)?;
    check_support(state, p_old, tol.subspace_support)?;
    let out = state.apply(p_old).apply(h).apply(p_new);
    let scale = h.norm_fro() * state.norm();
    if out.norm() <= 1e-12 * scale {
        return Err(Error::ZeroVector);
    }
    Ok(out)
}

/// Averages over a random waiting time between measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StochasticSummary {
    /// ⟨N⟩ = τ / ⟨δt⟩
    pub mean_steps: f64,
    /// ⟨N⟩ ⟨δt²⟩ / 2, the accumulated H_Z^(2) weight in the second-order closed form.
    pub second_order_weight: f64,
}

pub fn stochastic_timestep_summary(moment1: f64, moment2: f64, tau: f64) -> Result<StochasticSummary> {
    if !(moment1 > 0.0 && moment1.is_finite()) {
        return Err(Error::InvalidMoments(format!("first moment must be positive, got {moment1}")));
    }
    if !moment2.is_finite() || moment2 < moment1 * moment1 * (1.0 - 1e-12) {
        return Err(Error::InvalidMoments(format!(
            "second moment {moment2} is below the squared mean {}",
            moment1 * moment1
        )));
    }
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(Error::InvalidArgument(format!("total time must be finite and >= 0, got {tau}")));
    }
    let mean_steps = tau / moment1;
    Ok(StochasticSummary { mean_steps, second_order_weight: mean_steps * moment2 / 2.0 })
}
