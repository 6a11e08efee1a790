//! `intpat` — mining closed interval patterns and generators from
//! numerical CSV data, plus scaling, brute-force enumeration, benchmarks,
//! and search-space statistics.

mod emit;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "intpat",
    version,
    about = "Interval pattern mining over numerical CSV data",
    after_help = "Exit codes: 0 success, 2 usage error, 3 data error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine frequent closed interval patterns or pattern generators.
    Mine(MineArgs),
    /// Emit the interordinally scaled binary context of a dataset.
    Scale(ScaleArgs),
    /// Enumerate the whole search space by brute force (small data only).
    Oracle(OracleArgs),
    /// Mine across several supports and modes, reporting counts and times.
    Bench(BenchArgs),
    /// Report search-space size and compression ratios.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Generators,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Store {
    Trie,
    Hash,
}

impl Store {
    fn kind(self) -> intpat::miner::StoreKind {
        match self {
            Store::Trie => intpat::miner::StoreKind::Trie,
            Store::Hash => intpat::miner::StoreKind::Hash,
        }
    }
}

#[derive(Args)]
struct MineArgs {
    /// Input CSV: header row, optional leading `id` column, numeric cells.
    input: PathBuf,
    /// Minimal support, absolute (`3`) or as a percentage (`60%`, rounded
    /// up to a whole object count).
    #[arg(long, default_value = "1")]
    min_support: String,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    mode: Mode,
    /// Generator store backing `--mode generators`.
    #[arg(long, value_enum, default_value_t = Store::Trie)]
    store: Store,
    /// Mine independent top-level subtrees concurrently (closed mode).
    #[arg(long)]
    parallel: bool,
    /// Re-sort the output lexicographically by pattern bounds.
    #[arg(long)]
    sort: bool,
    /// Output file for the JSONL records (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// File for the run report (default: one JSON line on stderr).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ContextFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct ScaleArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ContextFormat::Csv)]
    format: ContextFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleEmit {
    Closed,
    Generators,
    Classes,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = OracleEmit::Classes)]
    emit: OracleEmit,
    #[arg(long, default_value = "1")]
    min_support: String,
    /// Enumeration cap on the search-space size; the INTPAT_ORACLE_CAP
    /// environment variable overrides the default, this flag overrides
    /// both.
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    sort: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    input: PathBuf,
    /// Comma-separated supports, absolute or percentages.
    #[arg(long, default_value = "1")]
    min_supports: String,
    /// Comma-separated modes: closed, generators.
    #[arg(long, default_value = "closed,generators")]
    modes: String,
    /// Comma-separated stores tried for generator runs.
    #[arg(long, default_value = "trie,hash")]
    stores: String,
    /// Also write the table as CSV to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    input: PathBuf,
    #[arg(long, default_value = "1")]
    min_support: String,
    /// Emit the report as one JSON object instead of text.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mine(args) => run::mine(args),
        Command::Scale(args) => run::scale(args),
        Command::Oracle(args) => run::oracle(args),
        Command::Bench(args) => run::bench(args),
        Command::Stats(args) => run::stats(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {:#}", err.message);
            ExitCode::from(err.exit_code)
        }
    }
}

/// An error with the exit code it maps to: 2 for usage, 3 for data.
pub struct CliError {
    pub exit_code: u8,
    pub message: anyhow::Error,
}

impl CliError {
    pub fn usage(message: impl Into<anyhow::Error>) -> CliError {
        CliError {
            exit_code: 2,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<anyhow::Error>) -> CliError {
        CliError {
            exit_code: 3,
            message: message.into(),
        }
    }
}
