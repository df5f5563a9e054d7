//! Batch front end: every check is one invocation with a JSON or table
//! report and an exit status (0 pass, 1 check failure, 2 usage error).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "m3decomp",
    version,
    about = "Verify and explore direct-sum decompositions of the 3x3 matrix algebra"
)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH", global = true)]
    output: Option<PathBuf>,

    /// Worker threads (0 uses all cores); never changes report content
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check closure, direct sum and unital component of catalog entries
    Verify(VerifyArgs),
    /// Enumerate complements over a prime field and match them to the catalog
    Search(SearchArgs),
    /// Structural invariants of entries, or the orbit-distinctness remarks
    Invariants(InvariantsArgs),
    /// Splitting Rota-Baxter operators of catalog entries
    Rb(RbArgs),
    /// Export the catalog as JSON
    Export,
    /// Derive the closure system of a generator pattern
    DeriveSystem(DeriveArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Selection {
    /// Run on every catalog entry
    #[arg(long, conflicts_with = "entry")]
    all: bool,

    /// Entry id (repeatable)
    #[arg(long, value_name = "ID")]
    entry: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Symbolic,
    Specialized,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    select: Selection,

    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,

    /// Samples per parametric entry in specialized mode
    #[arg(long, default_value_t = 100)]
    n: usize,

    /// Random seed; required in specialized mode
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Pattern name or alias (e.g. 7-2, thm6), or `all`
    #[arg(long)]
    pattern: String,

    /// Prime field: 2, 3 or 5
    #[arg(long)]
    prime: u32,

    /// Search the full cube instead of applying the pattern's fixed zeros
    #[arg(long)]
    full_cube: bool,

    /// Also check that every catalog specialization occurs in the
    /// full-cube enumeration
    #[arg(long)]
    soundness: bool,

    /// Maximal number of search nodes
    #[arg(long, default_value_t = 100_000_000)]
    node_limit: u64,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    #[command(flatten)]
    select: Selection,

    /// Check the orbit-distinctness remarks instead
    #[arg(long, conflicts_with_all = ["all", "entry"])]
    remarks: bool,

    /// Seed for specializing parametric entries
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
pub struct RbArgs {
    #[command(flatten)]
    select: Selection,

    /// Include each operator as a 9x9 matrix of rational functions
    #[arg(long)]
    matrices: bool,
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    /// Pattern name or alias
    #[arg(long)]
    pattern: String,

    /// Keep the letters the pattern fixes to zero
    #[arg(long)]
    no_fixed_zeros: bool,

    /// Compare zero sets with the printed system over this prime
    #[arg(long, value_name = "P")]
    compare_prime: Option<u32>,
}

fn run(cli: Cli) -> Result<Outcome, output::Failure> {
    if cli.common.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.jobs)
            .build_global()
            .map_err(|e| output::Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Verify(a) => commands::verify(&a),
        Command::Search(a) => commands::search(&a),
        Command::Invariants(a) => commands::invariants(&a),
        Command::Rb(a) => commands::rb(&a),
        Command::Export => commands::export(),
        Command::DeriveSystem(a) => commands::derive_system(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common.clone();
    match run(cli) {
        Ok(outcome) => match output::emit(&outcome, &common) {
            Ok(()) if outcome.passed() => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(output::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(output::Failure::Check(msg)) => {
            let outcome = Outcome::error(&msg);
            let _ = output::emit(&outcome, &common);
            ExitCode::from(1)
        }
    }
}
