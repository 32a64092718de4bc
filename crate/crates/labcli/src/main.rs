use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qzlab::{emit_report, list_presets, preset, run_experiment, ExperimentConfig, Format, LabError, LabResult, Mode};

#[derive(Parser)]
#[command(name = "qzlab", version, about = "Quasi-Zeno dynamics experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a built-in preset.
    Preset {
        name: String,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// List built-in presets.
    ListPresets,
}

#[derive(Args)]
struct Overrides {
    /// exact, effective, qzd, trajectories or compare
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of trajectories in trajectories mode.
    #[arg(long)]
    trajectories: Option<usize>,
    /// Output path stem; file extensions are appended.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Default directory for outputs when no path is given.
    #[arg(long, env = "QZLAB_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: String,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) -> LabResult<Format> {
        if let Some(m) = &self.mode {
            cfg.mode = Mode::parse(m).ok_or_else(|| LabError::config("mode", format!("unknown mode '{m}'")))?;
            if cfg.mode == Mode::Trajectories && cfg.n_trajectories == 0 {
                cfg.n_trajectories = 1000;
            }
        }
        if let Some(dt) = self.dt {
            cfg.dt = dt;
        }
        if let Some(tau) = self.tau {
            cfg.tau = tau;
        }
        if let Some(order) = self.order {
            cfg.order = order;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(n) = self.trajectories {
            cfg.n_trajectories = n;
        }
        cfg.validate()?;
        Format::parse(&self.format)
            .ok_or_else(|| LabError::config("format", format!("expected csv or json, got '{}'", self.format)))
    }

    fn stem(&self, cfg: &ExperimentConfig) -> PathBuf {
        if let Some(out) = &self.out {
            return out.clone();
        }
        if let Some(out) = &cfg.output {
            return PathBuf::from(out);
        }
        let name = cfg.name.clone().unwrap_or_else(|| "qzlab".to_string());
        match &self.out_dir {
            Some(dir) => dir.join(name),
            None => PathBuf::from(name),
        }
    }
}

fn execute(mut cfg: ExperimentConfig, overrides: &Overrides) -> LabResult<()> {
    let format = overrides.apply(&mut cfg)?;
    let report = run_experiment(&cfg)?;
    for w in &report.metadata.warnings {
        eprintln!("warning: {w}");
    }
    for path in emit_report(&report, &overrides.stem(&cfg), format)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, overrides } => ExperimentConfig::load(&config).and_then(|c| execute(c, &overrides)),
        Command::Preset { name, overrides } => match preset(&name) {
            Some(p) => execute(p.config, &overrides),
            None => Err(LabError::config("preset", format!("unknown preset '{name}'"))),
        },
        Command::ListPresets => {
            for p in list_presets() {
                println!("{:<20} {}", p.name, p.description);
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
