mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use idealforge::forge::Backend;
use idealforge::FieldConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<idealforge::Error> for CliError {
    fn from(e: idealforge::Error) -> Self {
        use idealforge::Error as E;
        match e {
            E::VerificationFailed(_) => CliError::Verification(e.to_string()),
            E::BudgetExceeded(_) | E::ResampleExhausted { .. } => CliError::Budget(e.to_string()),
            E::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "idealforge", version, about = "Generate and verify (F, G) pairs of ideal generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct JobsArg {
    /// Worker threads (0 = all cores).
    #[arg(long, env = "IDEALFORGE_JOBS", default_value_t = 0)]
    jobs: usize,
}

/// Flags shared by `generate` and `experiment`; each overrides the config file.
#[derive(Debug, Args, Default)]
struct Overrides {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// `Q`, `Fp:<p>` or `F<p>`.
    #[arg(long, value_parser = config::parse_field)]
    field: Option<FieldConfig>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Elementary,
    Bruhat,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Elementary => Backend::ElementaryProduct,
            BackendArg::Bruhat => Backend::Bruhat,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ExperimentKind {
    DetIrreducibility,
    SectionRoundtrip,
    CoverageGrowth,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a JSONL dataset and its manifest.
    Generate {
        #[command(flatten)]
        common: Overrides,
        /// Re-run the configuration recorded in a manifest.
        #[arg(long, conflicts_with = "config")]
        from_manifest: Option<PathBuf>,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        d_max: Option<u32>,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[arg(long)]
        s_max: Option<u32>,
        #[arg(long)]
        degree_cap: Option<u32>,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        emit_tokens: bool,
        /// Verify every record while generating (default).
        #[arg(long, overrides_with = "no_verify")]
        verify: bool,
        #[arg(long)]
        no_verify: bool,
        #[command(flatten)]
        jobs: JobsArg,
    },
    /// Re-check every record of a dataset.
    Verify {
        path: PathBuf,
        /// Write the per-record report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = idealforge::groebner::DEFAULT_MAX_PAIRS)]
        max_pairs: usize,
        #[command(flatten)]
        jobs: JobsArg,
    },
    /// Run a density-lab or coverage experiment and print a JSON report.
    Experiment {
        #[arg(value_enum)]
        kind: ExperimentKind,
        #[command(flatten)]
        common: Overrides,
        #[arg(long)]
        trials: Option<u64>,
        /// Entry degree bound.
        #[arg(long)]
        d: Option<u32>,
        /// Number of variables (det_irreducibility).
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        jobs: JobsArg,
    },
    /// Histograms of a dataset.
    Stats { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
