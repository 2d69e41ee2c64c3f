//! The `conical` command-line tool: JSON documents in, JSON reports out.

pub mod commands;
pub mod docs;
pub mod dot;
pub mod error;
pub mod output;
pub mod selftest;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use error::{exit, CliError};

/// Environment variable read by `derive` when `--tol` is absent.
pub const TOL_ENV: &str = "CONICAL_TOL";

#[derive(Debug, Parser)]
#[command(name = "conical", version, about = "Stratified finite spaces, conical derivatives and conical de Rham cohomology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard stratification of a space by a cover.
    Stratify(StratifyArgs),
    /// Refined poset: the stratification by every nonempty open set.
    Limit(LimitArgs),
    /// Induce the bottom map of a stratified square and certify it.
    CheckMap(CheckMapArgs),
    /// Conical derivative of a map between cones.
    Derive(DeriveArgs),
    /// Conical de Rham complex of a presented Lie algebra.
    Cohomology(CohomologyArgs),
    /// Run the randomized invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed recorded in the report and used by randomized suites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct StratifyArgs {
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long)]
    pub cover: PathBuf,
    /// Also write the Hasse diagram of the class poset.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Covers to coarsen onto (with `--witness`); repeatable.
    #[arg(long)]
    pub cover: Vec<PathBuf>,
    /// Report the coarsening surjection onto each given cover, or onto the
    /// whole-space cover when none is given.
    #[arg(long)]
    pub witness: bool,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CheckMapArgs {
    #[arg(long)]
    pub map: PathBuf,
    /// Source space, then target space; one file serves as both.
    #[arg(long, required = true, num_args = 1)]
    pub space: Vec<PathBuf>,
    /// Source cover, then target cover; one file serves as both. The
    /// identity-stratification mode takes only the target cover.
    #[arg(long, required = true, num_args = 1)]
    pub cover: Vec<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[arg(long)]
    pub query: PathBuf,
    /// Convergence tolerance; overrides the query document.
    #[arg(long, env = TOL_ENV)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub lie: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Cases per suite.
    #[arg(long, default_value_t = 40)]
    pub cases: usize,
    /// Corrupt the named suite's oracle, to check that failures surface.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
    /// Print a plain-text table instead of the JSON document.
    #[arg(long)]
    pub table: bool,
    #[command(flatten)]
    pub common: Common,
}

/// Everything that determines a report, hashed into its `meta` block.
/// Inputs are identified by the digest of their bytes, not their paths.
#[derive(Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: BTreeMap<String, Vec<String>>,
    pub tol: Option<f64>,
    pub max_steps: Option<usize>,
    pub seed: u64,
    pub witness: bool,
    pub dot: bool,
    pub cases: Option<usize>,
    pub table: bool,
    pub inject_fault: Option<String>,
}

impl RunConfig {
    pub fn new(command: &str, seed: u64) -> Self {
        RunConfig {
            command: command.into(),
            seed,
            ..RunConfig::default()
        }
    }

    pub fn input(&mut self, role: &str, digest: &str) {
        self.inputs.entry(role.into()).or_default().push(digest.into());
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.max_steps == Some(0) {
            return Err(CliError::Usage("--max-steps must be positive".into()));
        }
        Ok(())
    }

    pub fn meta(&self) -> serde_json::Value {
        let value = serde_json::to_value(self).expect("config serializes");
        output::meta(&self.command, self.seed, &value)
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Stratify(a) => commands::stratify(&a),
        Command::Limit(a) => commands::limit(&a),
        Command::CheckMap(a) => commands::check_map(&a),
        Command::Derive(a) => commands::derive(&a),
        Command::Cohomology(a) => commands::cohomology(&a),
        Command::Selftest(a) => commands::selftest(&a),
    }
}

/// Parses arguments, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
