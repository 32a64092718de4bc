//! Measurement subspaces, quasi-Zeno Hamiltonians and the dynamics they
//! generate under frequent projective measurement.

mod diagnostics;
mod evolution;
mod hamiltonians;
mod projectors;
mod steady;
mod trajectory;

pub use diagnostics::{
    stochastic_timestep_summary, subspace_switch, survival_exact, survival_exact_curve, survival_product,
    survival_product_curve, transition_probability, zeno_locking_metric, zeno_locking_metric_mixed, StochasticSummary,
    DEFAULT_ZENO_WARN_THRESHOLD,
};
pub use evolution::{
    effective_evolution, exact_step, exact_stroboscopic, exact_stroboscopic_state, nonuniform_closed_form,
    nonuniform_effective_evolution, second_order_closed_form, time_dependent_effective_evolution,
    time_dependent_exact_stroboscopic,
};
pub use hamiltonians::{effective_hamiltonian, quasi_zeno_hamiltonian, term_coefficient, QuasiZenoStack};
pub use projectors::{check_projector, projectors_from_observable, ProjectorSet, Subspace, DEFAULT_DEGENERACY_TOL};
pub use steady::{steady_state_analysis, SteadyStates};
pub use trajectory::{no_jump_fraction, sample_ensemble, sample_trajectory, Trajectory, RNG_NAME};

/// Truncation order used unless configured otherwise.
pub const DEFAULT_ORDER: usize = 2;
/// Highest supported truncation order.
pub const MAX_ORDER: usize = 6;
