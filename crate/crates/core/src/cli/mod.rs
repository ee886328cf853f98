//! `picode` command-line front end.
//!
//! Machine-readable JSON goes to stdout, summaries to stderr. Exit codes:
//! 0 success, 1 I/O or parse error, 2 construction precondition failure,
//! 3 certification or check failure, 4 dense dimension cap exceeded.

mod commands;
mod fixtures;
mod specfile;

pub use fixtures::example_specs;
pub use specfile::{Coeff, ConstructionBlock, SpecFile};

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use thiserror::Error;

use crate::codegen::CodegenError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONSTRUCTION: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_DIMENSION_CAP: i32 = 4;

/// Environment variable capping verifier threads.
pub const THREADS_ENV: &str = "PICODE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Construction(#[from] CodegenError),
    #[error("{0}")]
    DimensionCap(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Usage(_) => EXIT_IO,
            CliError::Construction(_) => EXIT_CONSTRUCTION,
            CliError::DimensionCap(_) => EXIT_DIMENSION_CAP,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "Io",
            CliError::Parse(_) => "Parse",
            CliError::Usage(_) => "Usage",
            CliError::Construction(e) => e.kind(),
            CliError::DimensionCap(_) => "DimensionCap",
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({ "error": self.kind(), "message": self.to_string() });
        let mut s = serde_json::to_string_pretty(&v).expect("error serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Parser)]
#[command(name = "picode", version, about = "Permutation-invariant qudit codes from polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code from a spec file and print its descriptor.
    Build {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a code descriptor (or spec file) exactly.
    Verify(VerifyArgs),
    /// Check the moment identities, or the root-of-unity identities with --d.
    Identities {
        /// Coefficients f_0, f_1, … as integers or p/q.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        f: Vec<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: usize,
    },
    /// Dense cross-check and recovery simulation for a small code.
    Oracle {
        code: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        channels: usize,
        #[arg(long, default_value_t = 20)]
        states: usize,
    },
    /// Write the six example spec files.
    Examples {
        #[arg(long, default_value = "examples")]
        dir: PathBuf,
    },
    /// Exact overlap table across a rational grid of the one-parameter family.
    Family {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: usize,
        /// Partition polynomials as JSON, e.g. '[[0,3],[12,-3]]'.
        #[arg(long)]
        p: String,
        #[arg(long)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").args(["t", "distance_up_to"])))]
pub struct VerifyArgs {
    pub code: PathBuf,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long = "distance-up-to")]
    pub distance_up_to: Option<usize>,
    /// Worker threads; overrides the environment variable.
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Command output: JSON for stdout plus a one-line summary for stderr.
pub struct Outcome {
    pub json: String,
    pub summary: String,
    pub exit_code: i32,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Build { spec, out } => commands::build(spec, out.as_deref()),
        Command::Verify(args) => commands::verify(args),
        Command::Identities { f, d, m } => commands::identities(f, *d, *m),
        Command::Oracle {
            code,
            seed,
            channels,
            states,
        } => commands::oracle(code, *seed, *channels, *states),
        Command::Examples { dir } => commands::examples(dir),
        Command::Family { m, d, p, grid, t } => commands::family(*m, *d, p, *grid, *t),
    }
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.json);
            eprintln!("{}", outcome.summary);
            outcome.exit_code
        }
        Err(e) => {
            print!("{}", e.to_json());
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
