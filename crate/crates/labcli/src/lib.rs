//! Experiment harness for quasi-Zeno simulations: declarative configs,
//! built-in presets, runs in several dynamics modes and CSV/JSON reports.

pub mod config;
pub mod crosscheck;
pub mod error;
pub mod presets;
pub mod report;
pub mod run;
pub mod system;

pub use config::{ExperimentConfig, InitialState, Mode};
pub use error::{LabError, LabResult};
pub use presets::{list_presets, preset, Preset};
pub use report::{emit_report, Format};
pub use run::{run_experiment, DiffRow, Metadata, Row, RunReport};
pub use system::System;
