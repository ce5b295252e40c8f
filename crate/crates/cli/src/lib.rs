//! Scenario runner for the `ifnorm` verification library.
//!
//! Exit codes: 0 when every check passed, 1 when one failed (or was
//! inconclusive under `--strict-inconclusive`), 2 for configuration errors,
//! 3 for I/O and internal faults.

pub mod catalog;
pub mod config;
pub mod report;
pub mod runner;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{ConfigError, Kind, ScenarioConfig};
use crate::report::{emit, Format, Report};

#[derive(Debug, Parser)]
#[command(name = "ifnorm", version, about = "Sampled verification of intuitionistic fuzzy normed spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every sampled draw; overrides the config.
    #[arg(long, global = true, env = "IFN_SEED")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write `<scenario>.<ext>` into this directory instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Count inconclusive checks as failures.
    #[arg(long, global = true)]
    pub strict_inconclusive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::JsonLines,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axiom checks of configured spaces.
    Axioms,
    /// Convergence and Cauchy indices of point sequences.
    Converge,
    /// Continuity witnesses at points.
    Continuity,
    /// Uniform continuity and Cauchy-image checks.
    Uniform,
    /// Open balls, open sets and preimages.
    Topology,
    /// Function sequences: uniform indices, Cauchy criterion, limit theorem.
    Funcseq,
    /// Run a built-in scenario, or the `catalog` list of a config.
    Catalog { name: Option<String> },
    /// List the built-in scenarios.
    ListCatalog,
}

impl Command {
    fn kind(&self) -> Option<Kind> {
        Some(match self {
            Command::Axioms => Kind::Axioms,
            Command::Converge => Kind::Converge,
            Command::Continuity => Kind::Continuity,
            Command::Uniform => Kind::UniformContinuity,
            Command::Topology => Kind::Topology,
            Command::Funcseq => Kind::Funcseq,
            Command::Catalog { .. } => Kind::Catalog,
            Command::ListCatalog => return None,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Internal(_) => 3,
        }
    }
}

/// What a successful invocation produced.
pub struct Outcome {
    pub report: Option<Report>,
    /// Text for stdout.
    pub stdout: String,
    pub exit_code: u8,
}

fn load(path: &PathBuf) -> Result<ScenarioConfig, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    ScenarioConfig::parse(&src).map_err(|mut e| {
        e.message = format!("{}: {}", path.display(), e.message);
        CliError::Config(e)
    })
}

/// Builds the report for a subcommand. Seed precedence: `--seed` (or
/// `IFN_SEED`), then the config, then 0.
pub fn build_report(cli: &Cli) -> Result<Option<Report>, CliError> {
    let Some(kind) = cli.command.kind() else {
        return Ok(None);
    };
    if let Command::Catalog { name: Some(name) } = &cli.command {
        if cli.config.is_some() {
            return Err(ConfigError {
                field: "--config".into(),
                line: None,
                message: "a named catalog scenario takes no config".into(),
            }
            .into());
        }
        let sc = catalog::find(name).ok_or_else(|| ConfigError {
            field: "name".into(),
            line: None,
            message: format!("unknown catalog scenario `{name}`; see list-catalog"),
        })?;
        let seed = cli.seed.unwrap_or(0);
        let mut report = Report::new(sc.name, "catalog", seed);
        report.records = (sc.run)(seed);
        return Ok(Some(report));
    }
    let cfg = match &cli.config {
        Some(p) => load(p)?,
        None => {
            return Err(ConfigError {
                field: "--config".into(),
                line: None,
                message: format!("`{}` needs --config", kind.name()),
            }
            .into())
        }
    };
    if let Some(k) = cfg.kind {
        if k != kind {
            return Err(ConfigError {
                field: "kind".into(),
                line: None,
                message: format!("config declares `{}` but the subcommand runs `{}`", k.name(), kind.name()),
            }
            .into());
        }
    }
    if let Some(k) = cfg.effective_kind() {
        if k != kind {
            return Err(ConfigError {
                field: k.name().into(),
                line: None,
                message: format!("section not allowed in a `{}` scenario", kind.name()),
            }
            .into());
        }
    }
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let mut report = runner::run(&cfg, seed);
    if cfg.kind.is_none() && report.kind == "empty" {
        report.kind = kind.name().into();
        if cfg.name.is_none() {
            report.scenario = kind.name().into();
        }
    }
    Ok(Some(report))
}

pub fn list_catalog() -> String {
    catalog::SCENARIOS
        .iter()
        .map(|s| format!("{:<22} {}\n", s.name, s.summary))
        .collect()
}

/// Runs a parsed command line to completion, writing any `--out` file.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let Some(report) = build_report(cli)? else {
        return Ok(Outcome {
            report: None,
            stdout: list_catalog(),
            exit_code: 0,
        });
    };
    let format: Format = cli.format.into();
    let text = emit(&report, format).map_err(CliError::Internal)?;
    let exit_code = u8::from(report.failed(cli.strict_inconclusive));
    let stdout = match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("{}.{}", report.scenario, format.extension()));
            std::fs::write(&path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome {
        report: Some(report),
        stdout,
        exit_code,
    })
}
