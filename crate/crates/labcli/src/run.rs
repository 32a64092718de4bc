use num_complex::Complex64 as C64;
use quasizeno::numkernel::propagator;
use quasizeno::zeno::{
    effective_evolution, effective_hamiltonian, sample_trajectory, zeno_locking_metric, Trajectory, RNG_NAME,
};
use quasizeno::{ComplexMatrix, StateVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Mode};
use crate::error::LabResult;
use crate::system::System;

/// Trajectories are sampled in blocks of this many seeds so memory stays
/// bounded; blocks are reduced in seed order.
const TRAJECTORY_BLOCK: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub time: f64,
    pub values: Vec<f64>,
    pub survival: f64,
    pub mode: Mode,
}

/// ‖U_exact − U_eff‖ and ‖U_exact − U_qzd‖ on the measurement subspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffRow {
    pub time: f64,
    pub effective: f64,
    pub qzd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalState {
    pub mode: Mode,
    /// Normalized amplitudes in the model basis as `[re, im]`.
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub config: serde_json::Value,
    pub seed: u64,
    pub rng: String,
    pub version: String,
    pub dim: usize,
    pub subspace_rank: usize,
    pub steps: usize,
    pub zeno_locking_initial: f64,
    pub zeno_locking_max: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diff: Vec<DiffRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub final_states: Vec<FinalState>,
    pub metadata: Metadata,
}

impl RunReport {
    /// An empty report with the given columns, used for header-only output.
    pub fn empty(columns: Vec<String>, config: &ExperimentConfig) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            diff: Vec::new(),
            final_states: Vec::new(),
            metadata: Metadata {
                config: serde_json::to_value(config).expect("config serializes"),
                seed: config.seed,
                rng: RNG_NAME.to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                dim: 0,
                subspace_rank: 0,
                steps: 0,
                zeno_locking_initial: 0.0,
                zeno_locking_max: 0.0,
                warnings: Vec::new(),
            },
        }
    }

    pub fn rows_for(&self, mode: Mode) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(move |r| r.mode == mode)
    }

    pub fn modes(&self) -> Vec<Mode> {
        let mut out: Vec<Mode> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.mode) {
                out.push(r.mode);
            }
        }
        out
    }

    pub fn final_state(&self, mode: Mode) -> Option<StateVector> {
        let f = self.final_states.iter().find(|f| f.mode == mode)?;
        let amps = f.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
        StateVector::new(amps).ok()
    }

    /// Largest entry of the diff column for `mode` (effective or qzd).
    pub fn max_diff(&self, mode: Mode) -> f64 {
        self.diff.iter().map(|d| if mode == Mode::Qzd { d.qzd } else { d.effective }).fold(0.0, f64::max)
    }
}

fn sampled(n: usize, steps: usize, every: usize) -> bool {
    n.is_multiple_of(every) || n == steps
}

fn amplitudes(state: &StateVector) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|z| [z.re, z.im]).collect()
}

/// One step operator compressed to the measurement subspace.
fn step_operator(sys: &System, config: &ExperimentConfig, mode: Mode) -> LabResult<ComplexMatrix> {
    let full = match mode {
        Mode::Exact => propagator(&sys.hamiltonian, config.dt)?,
        Mode::Effective | Mode::Qzd => {
            let order = if mode == Mode::Qzd { 1 } else { config.order };
            let stack = effective_hamiltonian(&sys.hamiltonian, sys.projector(), config.dt, order)?;
            effective_evolution(&stack, config.dt)?
        }
        _ => unreachable!("no single step operator for {mode}"),
    };
    Ok(sys.subspace.compress(&full))
}

struct Deterministic {
    rows: Vec<Row>,
    final_state: StateVector,
    locking_max: f64,
}

fn run_deterministic(sys: &System, config: &ExperimentConfig, mode: Mode) -> LabResult<Deterministic> {
    let step = step_operator(sys, config, mode)?;
    let steps = config.steps();
    let mut phi = sys.subspace.compress_state(&sys.psi0);
    let mut rows = Vec::with_capacity(steps / config.sample_every + 1);
    let mut locking_max: f64 = 0.0;
    let mut psi = sys.psi0.clone();
    for n in 1..=steps {
        phi = phi.apply(&step);
        if sampled(n, steps, config.sample_every) {
            psi = sys.subspace.embed_state(&phi);
            let survival = phi.norm_squared();
            if survival > 0.0 {
                locking_max = locking_max.max(zeno_locking_metric(&sys.hamiltonian, &psi, sys.projector(), config.dt)?);
            }
            rows.push(Row { time: n as f64 * config.dt, values: sys.read(&psi), survival, mode });
        }
    }
    let final_state = if psi.norm_squared() > 0.0 { psi.normalized()? } else { psi };
    Ok(Deterministic { rows, final_state, locking_max })
}

/// Per-row sums over one block of trajectories: readout values and the
/// number of trajectories without a jump so far.
fn accumulate(sys: &System, config: &ExperimentConfig, t: &Trajectory, sums: &mut [Vec<f64>], alive: &mut [usize]) {
    let steps = config.steps();
    let mut row = 0;
    let mut jumped = false;
    for n in 1..=steps {
        jumped |= t.outcomes[n - 1] != t.initial_outcome;
        if sampled(n, steps, config.sample_every) {
            for (s, v) in sums[row].iter_mut().zip(sys.read(&t.states[n - 1])) {
                *s += v;
            }
            if !jumped {
                alive[row] += 1;
            }
            row += 1;
        }
    }
}

fn run_trajectories(sys: &System, config: &ExperimentConfig) -> LabResult<Vec<Row>> {
    let steps = config.steps();
    let times: Vec<f64> =
        (1..=steps).filter(|&n| sampled(n, steps, config.sample_every)).map(|n| n as f64 * config.dt).collect();
    let width = sys.columns.len();
    let mut sums = vec![vec![0.0; width]; times.len()];
    let mut alive = vec![0usize; times.len()];
    let seeds: Vec<u64> = (0..config.n_trajectories as u64).map(|i| config.seed.wrapping_add(i)).collect();
    for block in seeds.chunks(TRAJECTORY_BLOCK) {
        let partial: Vec<(Vec<Vec<f64>>, Vec<usize>)> = block
            .par_iter()
            .map(|&seed| {
                let t = sample_trajectory(&sys.hamiltonian, &sys.projectors, &sys.psi0, config.dt, steps, seed)?;
                let mut s = vec![vec![0.0; width]; times.len()];
                let mut a = vec![0usize; times.len()];
                accumulate(sys, config, &t, &mut s, &mut a);
                Ok((s, a))
            })
            .collect::<quasizeno::Result<_>>()?;
        for (s, a) in partial {
            for (acc, row) in sums.iter_mut().zip(&s) {
                for (x, y) in acc.iter_mut().zip(row) {
                    *x += y;
                }
            }
            for (x, y) in alive.iter_mut().zip(&a) {
                *x += y;
            }
        }
    }
    let count = config.n_trajectories as f64;
    Ok(times
        .into_iter()
        .zip(sums.into_iter().zip(alive))
        .map(|(time, (s, a))| Row {
            time,
            values: s.into_iter().map(|x| x / count).collect(),
            survival: a as f64 / count,
            mode: Mode::Trajectories,
        })
        .collect())
}

/// Operator-norm distance of the exact and effective products at each
/// sampled step, computed on the measurement subspace.
fn operator_diffs(sys: &System, config: &ExperimentConfig) -> LabResult<Vec<DiffRow>> {
    let exact = step_operator(sys, config, Mode::Exact)?;
    let effective = step_operator(sys, config, Mode::Effective)?;
    let qzd = step_operator(sys, config, Mode::Qzd)?;
    let steps = config.steps();
    let rank = sys.subspace.rank();
    let (mut ue, mut uf, mut uq) =
        (ComplexMatrix::identity(rank), ComplexMatrix::identity(rank), ComplexMatrix::identity(rank));
    let mut out = Vec::new();
    for n in 1..=steps {
        ue = &exact * &ue;
        uf = &effective * &uf;
        uq = &qzd * &uq;
        if sampled(n, steps, config.sample_every) {
            out.push(DiffRow {
                time: n as f64 * config.dt,
                effective: (&ue - &uf).norm_2(),
                qzd: (&ue - &uq).norm_2(),
            });
        }
    }
    Ok(out)
}

/// Runs the configured experiment and collects a report.
pub fn run_experiment(config: &ExperimentConfig) -> LabResult<RunReport> {
    let sys = System::prepare(config)?;
    let locking_initial = zeno_locking_metric(&sys.hamiltonian, &sys.psi0, sys.projector(), config.dt)?;
    let mut report = RunReport::empty(sys.columns.clone(), config);
    report.metadata.dim = sys.basis().dim();
    report.metadata.subspace_rank = sys.subspace.rank();
    report.metadata.steps = config.steps();
    report.metadata.zeno_locking_initial = locking_initial;
    let mut locking_max = locking_initial;

    let modes: &[Mode] = match config.mode {
        Mode::Compare => &[Mode::Exact, Mode::Effective, Mode::Qzd],
        Mode::Trajectories => &[],
        ref m => std::slice::from_ref(m),
    };
    let mut per_mode = Vec::new();
    for &mode in modes {
        let run = run_deterministic(&sys, config, mode)?;
        locking_max = locking_max.max(run.locking_max);
        report.final_states.push(FinalState { mode, amplitudes: amplitudes(&run.final_state) });
        per_mode.push(run.rows);
    }
    if config.mode == Mode::Trajectories {
        per_mode.push(run_trajectories(&sys, config)?);
    }
    if config.mode == Mode::Compare {
        report.diff = operator_diffs(&sys, config)?;
    }

    // Interleave by time; modes keep their listed order at equal times.
    let len = per_mode.first().map_or(0, Vec::len);
    for i in 0..len {
        for rows in &per_mode {
            report.rows.push(rows[i].clone());
        }
    }

    report.metadata.zeno_locking_max = locking_max;
    if locking_max > config.zeno_warn_threshold {
        report.metadata.warnings.push(format!(
            "Zeno-locking metric reaches {locking_max:.3e}, above the threshold {:.3e}; \
             the effective expansion may be unreliable at this timestep",
            config.zeno_warn_threshold
        ));
    }
    Ok(report)
}
