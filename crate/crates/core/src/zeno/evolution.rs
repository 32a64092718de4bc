use num_complex::Complex64 as C64;

use super::hamiltonians::{effective_hamiltonian, QuasiZenoStack};
use crate::error::{Error, Result};
use crate::numkernel::{mat_exp, propagator, ComplexMatrix, StateVector};

fn check_duration(t: f64, what: &str) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what} must be finite and >= 0, got {t}")));
    }
    Ok(())
}

fn check_steps(timesteps: &[f64]) -> Result<()> {
    for (j, &dt) in timesteps.iter().enumerate() {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("timestep {j} must be positive, got {dt}")));
        }
    }
    Ok(())
}

/// U_eff(τ) = exp(−i H_eff τ). H_eff vanishes outside the measurement
/// subspace, so the returned operator acts as the identity there; only its
/// compression to the subspace is physical.
pub fn effective_evolution(stack: &QuasiZenoStack, tau: f64) -> Result<ComplexMatrix> {
    check_duration(tau, "evolution time")?;
    mat_exp(&stack.h_eff().scale(C64::new(0.0, -tau)))
}

/// One measured step, P exp(−iHδt).
pub fn exact_step(h: &ComplexMatrix, p: &ComplexMatrix, dt: f64) -> Result<ComplexMatrix> {
    if h.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: p.dim() });
    }
    Ok(p * &propagator(h, dt)?)
}

/// (P exp(−iHδt))^N by repeated multiplication. N = 0 gives the identity.
pub fn exact_stroboscopic(h: &ComplexMatrix, p: &ComplexMatrix, dt: f64, steps: usize) -> Result<ComplexMatrix> {
    if steps == 0 {
        return Ok(ComplexMatrix::identity(h.dim()));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("timestep must be positive, got {dt}")));
    }
    let u1 = exact_step(h, p, dt)?;
    let mut u = u1.clone();
    for _ in 1..steps {
        u = &u1 * &u;
    }
    Ok(u)
}

/// U_N ψ₀, stepping the state instead of the operator.
pub fn exact_stroboscopic_state(
    h: &ComplexMatrix,
    p: &ComplexMatrix,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
) -> Result<StateVector> {
    if steps == 0 {
        return Ok(psi0.clone());
    }
    let u1 = exact_step(h, p, dt)?;
    let mut psi = psi0.clone();
    for _ in 0..steps {
        psi = psi.apply(&u1);
    }
    Ok(psi)
}

/// Π_j exp(−iδt_j H_eff(δt_j)) with the earliest step rightmost.
pub fn nonuniform_effective_evolution(
    h: &ComplexMatrix,
    p: &ComplexMatrix,
    timesteps: &[f64],
    order: usize,
) -> Result<ComplexMatrix> {
    time_dependent_effective_evolution(|_| h.clone(), p, timesteps, order)
}

/// exp(−i H_Z^(1) τ − H_Z^(2) Σ_j δt_j²/2), the second-order closed form of
/// the ordered product when the per-step factors are treated as commuting.
pub fn nonuniform_closed_form(h: &ComplexMatrix, p: &ComplexMatrix, timesteps: &[f64]) -> Result<ComplexMatrix> {
    check_steps(timesteps)?;
    let tau: f64 = timesteps.iter().sum();
    let weight: f64 = timesteps.iter().map(|dt| dt * dt / 2.0).sum();
    second_order_closed_form(h, p, tau, weight)
}

/// exp(−i H_Z^(1) τ − H_Z^(2) w) for an accumulated second-order weight w.
pub fn second_order_closed_form(h: &ComplexMatrix, p: &ComplexMatrix, tau: f64, weight: f64) -> Result<ComplexMatrix> {
    check_duration(tau, "evolution time")?;
    check_duration(weight, "second-order weight")?;
    let stack = effective_hamiltonian(h, p, 0.0, 2)?;
    let generator = &stack.h_z(1).scale(C64::new(0.0, -tau)) - &stack.h_z(2).scale_real(weight);
    mat_exp(&generator)
}

/// Time-ordered product of per-step effective exponentials, each built from
/// that step's own Hamiltonian.
pub fn time_dependent_effective_evolution<F>(
    mut h_of_step: F,
    p: &ComplexMatrix,
    timesteps: &[f64],
    order: usize,
) -> Result<ComplexMatrix>
where
    F: FnMut(usize) -> ComplexMatrix,
{
    check_steps(timesteps)?;
    let mut u = ComplexMatrix::identity(p.dim());
    for (j, &dt) in timesteps.iter().enumerate() {
        let stack = effective_hamiltonian(&h_of_step(j), p, dt, order)?;
        u = &effective_evolution(&stack, dt)? * &u;
    }
    Ok(u)
}

/// Π_j P exp(−i H_j δt_j), the exact counterpart of the time-dependent
/// effective evolution.
pub fn time_dependent_exact_stroboscopic<F>(
    mut h_of_step: F,
    p: &ComplexMatrix,
    timesteps: &[f64],
) -> Result<ComplexMatrix>
where
    F: FnMut(usize) -> ComplexMatrix,
{
    check_steps(timesteps)?;
    let mut u = ComplexMatrix::identity(p.dim());
    for (j, &dt) in timesteps.iter().enumerate() {
        u = &exact_step(&h_of_step(j), p, dt)? * &u;
    }
    Ok(u)
}
