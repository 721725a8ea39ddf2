//! The `sfdc` command line: word enumeration, reduction, linking, the
//! conjecture system, the sphere oracle and table regeneration.

mod cache;
mod commands;

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use sfdc_core::reduction::global_reducer;
use sfdc_core::Error;

pub use cache::{Cache, CACHE_ENV, CACHE_FILE};

/// Printed to standard error on every usage error.
pub const GRAMMAR: &str = "\
usage:
  sfdc words --k K [--list|--count]
  sfdc reduce <word> [--json]
  sfdc link <word> --pairs i:j[,i:j...]
  sfdc conjecture --k K [--mode symbolic|numeric] [--n-samples a,b,...] [--json]
  sfdc oracle-check --n N --p P [--max-k M] [--word W] [--points C] [--eigenfunctions E] [--rng-seed S]
  sfdc table --max-k M --format md|csv|json
environment:
  SFDC_CACHE_DIR  directory for the persisted reduction cache";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub const DEFAULT_RNG_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "sfdc", version, about = "Exact word calculus for eigenfunctions on space forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List or count the canonical words of half-length K.
    Words {
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "count")]
        list: bool,
        #[arg(long)]
        count: bool,
    },
    /// Reduce a word to its polynomial in θ, K and n.
    Reduce {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply linking operators to a word.
    Link {
        word: String,
        /// Pairs of 1-based positions, `i:j[,i:j...]`.
        #[arg(long)]
        pairs: String,
    },
    /// Solve the vanishing system for the nested word and check both conjectures.
    Conjecture {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
        mode: ModeArg,
        /// Integer values of n for the numeric checks.
        #[arg(long, value_delimiter = ',')]
        n_samples: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Compare reduced polynomials with exact contractions on the unit sphere.
    OracleCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long)]
        word: Option<String>,
        /// Sphere points per eigenfunction.
        #[arg(long, default_value_t = 2)]
        points: usize,
        /// Basis eigenfunctions to try, capped at the eigenspace dimension.
        #[arg(long, default_value_t = 2)]
        eigenfunctions: usize,
        /// Seed for the permutations in the volume-form check.
        #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
        rng_seed: u64,
    },
    /// Regenerate the table of reduced words.
    Table {
        #[arg(long)]
        max_k: usize,
        #[arg(long, value_enum)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Md,
    Csv,
    Json,
}

/// Why a command did not succeed; each kind maps to one exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Verify(String),
    Io(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Io(_) => EXIT_IO,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "error: {m}"),
            Failure::Verify(m) => write!(f, "verification failed: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
            Failure::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LetterCount { .. }
            | Error::EmptyToken { .. }
            | Error::InvalidCharacter(_)
            | Error::SizeLimit { .. }
            | Error::UnsupportedFormat(_)
            | Error::Index { .. }
            | Error::Overlap(_)
            | Error::Pole(_)
            | Error::BasePoint
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Runs one invocation against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let _ = writeln!(err, "{}\n{GRAMMAR}", e.render().to_string().trim_end());
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{f}");
            if matches!(f, Failure::Usage(_)) {
                let _ = writeln!(err, "{GRAMMAR}");
            }
            f.exit_code()
        }
    }
}

/// Runs a parsed command, loading and saving the reduction cache when
/// `SFDC_CACHE_DIR` is set.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    let cache = Cache::from_env();
    if let Some(c) = &cache {
        c.load(global_reducer())?;
    }
    let result = commands::dispatch(command, out);
    if let Some(c) = &cache {
        // a verification failure still leaves valid reductions behind
        let saved = c.save(global_reducer());
        result.clone().and(saved)?;
    }
    result
}
