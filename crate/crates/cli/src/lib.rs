pub mod config;
pub mod evolve;
pub mod output;
pub mod sweep;
pub mod verify;
pub mod wigner_cmd;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sscat_core::Error as CoreError;

use config::{ConfigError, Preset, ScenarioConfig};

#[derive(Debug, Parser)]
#[command(name = "sscat", version, about = "Squeezed-cat cavity/qubit verification and scenario runner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON scenario file; every key is optional.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Parameter preset supplying defaults.
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the identity and oracle suite; writes verify_report.json.
    Verify,
    /// Evolve |gamma>|g> under H_SS; writes timeseries.csv.
    Evolve,
    /// Wigner grid of the measured field state; writes wigner.csv.
    Wigner,
    /// Sweep a parameter; writes sweep.csv.
    Sweep,
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILURE: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Core(CoreError),
    Io(std::io::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "config error: {e}"),
            RunError::Core(e) => write!(f, "error: {e}"),
            RunError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) | RunError::Io(_) => EXIT_CONFIG,
            // the grid range or dimensions came from the config
            RunError::Core(CoreError::TrustRegionViolation { .. } | CoreError::InvalidGrid(_) | CoreError::InvalidDims(_)) => EXIT_CONFIG,
            RunError::Core(_) => EXIT_CHECK_FAILURE,
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<CoreError> for RunError {
    fn from(e: CoreError) -> Self {
        RunError::Core(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn load(cli: &Cli) -> Result<ScenarioConfig, ConfigError> {
    let preset = cli.preset.unwrap_or_default();
    match &cli.config {
        Some(path) => ScenarioConfig::load(path, preset),
        None => ScenarioConfig::from_preset(preset),
    }
}

/// Executes one command; returns the exit status and writes files to
/// `cli.out`. Human-readable output goes to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn std::io::Write) -> Result<u8, RunError> {
    let cfg = load(cli)?;
    let out: &Path = &cli.out;
    match cli.command {
        Command::Verify => {
            // no file and no preset: cover both presets
            let sets: Vec<(&str, _)> = if cli.config.is_none() && cli.preset.is_none() {
                [Preset::Default, Preset::DeepSqueeze]
                    .iter()
                    .map(|p| (p.name(), p.params()))
                    .collect()
            } else {
                vec![(cfg.preset, cfg.params())]
            };
            let report = verify::verify(&cfg, &sets);
            output::write(out, "verify_report.json", &report.json())?;
            stdout.write_all(report.table().as_bytes())?;
            Ok(if report.passed { EXIT_PASS } else { EXIT_CHECK_FAILURE })
        }
        Command::Evolve => {
            let result = evolve::run(&cfg)?;
            output::write(out, "timeseries.csv", &result.csv)?;
            if result.aborted {
                writeln!(stdout, "trajectory cut at the leakage limit")?;
                return Ok(EXIT_CHECK_FAILURE);
            }
            Ok(EXIT_PASS)
        }
        Command::Wigner => {
            let t = cfg.wigner.t;
            if t < cfg.t_start || t > cfg.t_end {
                return Err(RunError::Config(ConfigError::Invalid {
                    field: "wigner.t".into(),
                    message: format!("{t} lies outside the grid [{}, {}]", cfg.t_start, cfg.t_end),
                }));
            }
            let csv = wigner_cmd::run(&cfg)?;
            output::write(out, "wigner.csv", &csv)?;
            Ok(EXIT_PASS)
        }
        Command::Sweep => {
            let result = sweep::run(&cfg);
            output::write(out, "sweep.csv", &result.csv)?;
            if !result.crossing_ok {
                writeln!(stdout, "t_star cross-check failed")?;
                return Ok(EXIT_CHECK_FAILURE);
            }
            Ok(EXIT_PASS)
        }
    }
}

pub fn main_with(cli: &Cli) -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
