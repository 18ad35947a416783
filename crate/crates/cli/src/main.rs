//! `polar-rank`: builds incidence matrices of W(2m-1, p^t), computes their
//! p-ranks, evaluates the rank formulas, and cross-checks the two.
//!
//! Exit codes: 0 success or match, 1 operational error, 2 mismatch.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Status;

/// Default cap on rows x cols of a matrix built by the oracle path.
pub const DEFAULT_MAX_CELLS: u64 = 500_000_000;

#[derive(Parser, Debug)]
#[command(name = "polar-rank", version, about = "p-ranks of symplectic polar space incidence matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the formula rank with the rank of the built matrix.
    Verify(VerifyArgs),
    /// Formula ranks for r = m over a range of p and t.
    Table(TableArgs),
    /// Write the incidence matrix and print its metadata.
    Export(ExportArgs),
    /// Rank over GF(p) of a matrix file.
    Rank(RankArgs),
    /// Formula rank report without building any matrix.
    Formula(FormulaArgs),
    /// The exact transfer matrix D for (m, p).
    Dmatrix(DmatrixArgs),
    /// The H-type posets and the signed poset.
    Posets(PosetArgs),
    /// Function space checks.
    #[command(subcommand)]
    Lab(LabCommand),
}

#[derive(Subcommand, Debug)]
enum LabCommand {
    /// Run the operator checks and print the pass/fail ledger.
    VerifyLemmas(LemmaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    /// The line-based sparse format read by `rank`.
    Native,
    /// Matrix Market coordinate integer general.
    Mm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    FormulaOnly,
    OracleOnly,
    CrossValidate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Shift,
    Projector,
    Tau,
    Basis,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; elimination currently runs on one.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
}

#[derive(Args, Debug, Clone)]
pub struct Geometry {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub t: u32,
    /// Flat dimension, 1 <= r <= 2m-1; defaults to m.
    #[arg(long)]
    pub r: Option<u32>,
}

impl Geometry {
    pub fn r(&self) -> u32 {
        self.r.unwrap_or(self.m)
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub geo: Geometry,
    #[arg(long, value_enum, default_value_t = Mode::CrossValidate)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Build matrices above the cell cap anyway.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Comma-separated primes; 2 is allowed for m = 2.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u32>,
    /// Largest t.
    #[arg(long)]
    pub t: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub geo: Geometry,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Native)]
    pub format: MatrixFormat,
    /// Matrix file to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Metadata JSON path; stdout when absent.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    pub matrix: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct FormulaArgs {
    #[command(flatten)]
    pub geo: Geometry,
    /// Report every t from 1 to N instead of the single --t.
    #[arg(long)]
    pub all_t: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DmatrixArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PosetArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub t: u32,
    /// Grading class for H[d] and S[d].
    #[arg(long, default_value_t = 0)]
    pub d: u64,
    /// Emit the Hasse diagram of S[d] in DOT instead of JSON.
    #[arg(long)]
    pub dot: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct LemmaArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub t: u32,
    /// Restrict to these suites (comma-separated); all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<SuiteArg>,
    /// Random monomials per check when the space is too large to sweep.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Verify(a) => commands::verify(&a),
        Command::Table(a) => commands::table(&a),
        Command::Export(a) => commands::export(&a),
        Command::Rank(a) => commands::rank(&a),
        Command::Formula(a) => commands::formula(&a),
        Command::Dmatrix(a) => commands::dmatrix(&a),
        Command::Posets(a) => commands::posets(&a),
        Command::Lab(LabCommand::VerifyLemmas(a)) => commands::verify_lemmas(&a),
    };
    match result {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

