use quasizeno::models::{ModelSpec, ObservableSpec};
use quasizeno::zeno::{DEFAULT_ORDER, DEFAULT_ZENO_WARN_THRESHOLD};

use crate::config::{ExperimentConfig, InitialState, Mode};

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: ExperimentConfig,
}

fn base(name: &str, model: ModelSpec, observable: ObservableSpec, label: Vec<i32>) -> ExperimentConfig {
    ExperimentConfig {
        name: Some(name.to_string()),
        model,
        observable,
        initial_state: InitialState::Label { label },
        dt: 1e-2,
        tau: 1.0,
        order: DEFAULT_ORDER,
        mode: Mode::Compare,
        n_trajectories: 0,
        seed: 0,
        output: None,
        sample_every: 1,
        zeno_warn_threshold: DEFAULT_ZENO_WARN_THRESHOLD,
    }
}

fn three_level() -> Preset {
    let mut config = base("three-level", ModelSpec::spin1_transverse(1.0), ObservableSpec::abs_sz(), vec![-1]);
    config.mode = Mode::Effective;
    config.tau = 1000.0;
    config.sample_every = 100;
    Preset {
        name: "three-level",
        description: "Spin-1 with H = λSx, measuring |Sz|; starting in |-1>, the dark state \
                      (|-1> - |1>)/√2 survives and the survival probability tends to 1/2",
        config,
    }
}

fn spin_chain_region() -> Preset {
    let mut config = base(
        "spin-chain-region",
        ModelSpec::xx_chain(6, 1.0),
        ObservableSpec::region_magnetization(&[2, 3]),
        vec![1, 1, 1, -1, -1, -1],
    );
    config.tau = 50.0;
    config.sample_every = 10;
    Preset {
        name: "spin-chain-region",
        description: "Open 6-site XX chain with the magnetization of sites 2 and 3 measured; \
                      spin exchange across the region boundary is suppressed and replaced by \
                      second-order processes through the region",
        config,
    }
}

fn lattice_region() -> Preset {
    let mut config = base(
        "lattice-region",
        ModelSpec::bose_hubbard(6, 3, 1.0, 2.0),
        ObservableSpec::region_occupation(&[2, 3]),
        vec![1, 1, 1, 0, 0, 0],
    );
    config.tau = 20.0;
    config.sample_every = 10;
    Preset {
        name: "lattice-region",
        description: "Bose-Hubbard chain, 6 sites and 3 atoms, with the atom number on sites 2 \
                      and 3 measured; tunnelling in and out of the region only acts at second order",
        config,
    }
}

fn lattice_difference() -> Preset {
    let mut config = base(
        "lattice-difference",
        ModelSpec::bose_hubbard(6, 2, 1.0, 0.0),
        ObservableSpec::occupation_difference(&[0, 1], &[4, 5]),
        vec![0, 0, 1, 1, 0, 0],
    );
    config.tau = 20.0;
    config.sample_every = 10;
    Preset {
        name: "lattice-difference",
        description: "Bose-Hubbard chain, 6 sites and 2 atoms, measuring N_A - N_C for region \
                      A = {0,1} (positive), region C = {4,5} (negative) and the unmeasured region \
                      B = {2,3} between them; the measurement mediates pair processes out of B",
        config,
    }
}

fn fig4() -> Preset {
    let mut config = base(
        "fig4",
        ModelSpec::bose_hubbard(4, 2, 1.0, 0.0),
        ObservableSpec::region_occupation(&[1, 2]),
        vec![1, 1, 0, 0],
    );
    config.tau = 200.0;
    Preset {
        name: "fig4",
        description: "4 sites, 2 atoms, J = 1, U = 0, δt = 1e-2, measuring the constraint \
                      N₂+N₃=1 (sites 1 and 2, counted from 0) from |1,1,0,0>; the standard Zeno \
                      limit freezes the outer sites while the quasi-Zeno terms move an atom to \
                      the far site",
        config,
    }
}

pub fn list_presets() -> Vec<Preset> {
    vec![three_level(), spin_chain_region(), lattice_region(), lattice_difference(), fig4()]
}

pub fn preset(name: &str) -> Option<Preset> {
    list_presets().into_iter().find(|p| p.name == name)
}
