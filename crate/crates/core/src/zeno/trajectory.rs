use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::projectors::ProjectorSet;
use crate::error::{Error, Result};
use crate::numkernel::{propagator, ComplexMatrix, StateVector, Tolerances};

/// Name of the generator behind every sampled trajectory.
pub const RNG_NAME: &str = "ChaCha8Rng";

const DEGENERATE_PROBABILITY: f64 = 1e-15;

/// One sampled measurement record.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Normalized post-measurement states; empty unless states were recorded.
    pub states: Vec<StateVector>,
    /// Index into the projector set of each measurement outcome.
    pub outcomes: Vec<usize>,
    /// Cumulative log-probability of the realized outcomes.
    pub log_survival: Vec<f64>,
    pub initial_outcome: usize,
    pub seed: u64,
}

impl Trajectory {
    /// True if every measurement returned the initial subspace.
    pub fn no_jump(&self) -> bool {
        self.outcomes.iter().all(|&k| k == self.initial_outcome)
    }

    /// Step index (0-based) of the first outcome change.
    pub fn first_jump(&self) -> Option<usize> {
        self.outcomes.iter().position(|&k| k != self.initial_outcome)
    }
}

/// Evolves under exp(−iHδt) between measurements of `projectors`, sampling
/// each outcome by the Born rule and renormalizing.
pub fn sample_trajectory(
    h: &ComplexMatrix,
    projectors: &ProjectorSet,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
    seed: u64,
) -> Result<Trajectory> {
    let u = propagator(h, dt)?;
    run(&u, projectors, psi0, dt, steps, seed, true)
}

/// Samples one trajectory per seed in parallel. Results come back in the
/// order of `seeds` and do not record intermediate states.
pub fn sample_ensemble(
    h: &ComplexMatrix,
    projectors: &ProjectorSet,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
    seeds: &[u64],
) -> Result<Vec<Trajectory>> {
    let u = propagator(h, dt)?;
    seeds.par_iter().map(|&seed| run(&u, projectors, psi0, dt, steps, seed, false)).collect()
}

fn run(
    u: &ComplexMatrix,
    projectors: &ProjectorSet,
    psi0: &StateVector,
    dt: f64,
    steps: usize,
    seed: u64,
    record_states: bool,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::InvalidArgument("a trajectory needs at least one step".into()));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("timestep must be positive, got {dt}")));
    }
    if u.dim() != psi0.dim() || projectors.dim() != psi0.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: psi0.dim() });
    }
    if (psi0.norm_squared() - 1.0).abs() > Tolerances::default().subspace_support {
        return Err(Error::InvalidArgument("initial state must be normalized".into()));
    }
    let initial_outcome = projectors.subspace_of(psi0, Tolerances::default().subspace_support)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Trajectory {
        times: Vec::with_capacity(steps),
        states: Vec::with_capacity(if record_states { steps } else { 0 }),
        outcomes: Vec::with_capacity(steps),
        log_survival: Vec::with_capacity(steps),
        initial_outcome,
        seed,
    };
    let mut psi = psi0.clone();
    let mut log_survival = 0.0;
    let mut branches = Vec::with_capacity(projectors.len());
    for n in 1..=steps {
        let evolved = psi.apply(u);
        branches.clear();
        branches.extend(projectors.projectors().iter().map(|p| evolved.apply(p)));
        let probs: Vec<f64> = branches.iter().map(StateVector::norm_squared).collect();
        let total: f64 = probs.iter().sum();
        if probs.iter().all(|&p| p < DEGENERATE_PROBABILITY) {
            return Err(Error::DegenerateStep { step: n });
        }
        let draw = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut k = probs.len() - 1;
        for (j, &p) in probs.iter().enumerate() {
            acc += p;
            if draw < acc && p > 0.0 {
                k = j;
                break;
            }
        }
        while probs[k] <= 0.0 {
            k -= 1;
        }
        let p_k = probs[k];
        log_survival += (p_k / total).ln();
        psi = branches[k].scale(C64::new(1.0 / p_k.sqrt(), 0.0));

        out.times.push(n as f64 * dt);
        out.outcomes.push(k);
        out.log_survival.push(log_survival);
        if record_states {
            out.states.push(psi.clone());
        }
    }
    Ok(out)
}

/// Fraction of trajectories without an outcome change.
pub fn no_jump_fraction(trajectories: &[Trajectory]) -> f64 {
    if trajectories.is_empty() {
        return 0.0;
    }
    trajectories.iter().filter(|t| t.no_jump()).count() as f64 / trajectories.len() as f64
}
