//! Command-line front end: parse algebra configs, run computations,
//! cross-check methods, and emit machine-readable tables.
//!
//! Exit codes: 0 success, 1 mathematical check failure, 2 usage/parse
//! error, 3 resource-bound exceeded, 4 I/O error.

mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "hopfind",
    about = "Exact indicators of finite-dimensional Hopf algebras",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Trace,
    Integral,
    Closed,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceArg {
    /// The scalar indicator sequence.
    Nu,
    /// The Sweedler power map sequence.
    P,
    /// The twisted power map sequence.
    T,
}

#[derive(Args)]
pub struct CommonOut {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: FormatArg,
    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Verify the Hopf algebra axioms of a configured algebra.
    Axioms {
        /// Path to an algebra config (JSON).
        config: PathBuf,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Evaluate indicators nu_n over a range of n.
    Indicator {
        config: PathBuf,
        /// First n (inclusive).
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        from: i64,
        /// Last n (inclusive).
        #[arg(long, allow_hyphen_values = true, default_value = "10")]
        to: i64,
        /// Evaluation method; `all` cross-checks and aborts on mismatch.
        #[arg(long, value_enum, default_value = "trace")]
        method: MethodArg,
        /// Also print empirical observations to the diagnostic stream.
        #[arg(long)]
        observations: bool,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Minimal polynomial of an indicator or power-map sequence, with its
    /// period/multiplicity split and root-of-unity certificate.
    Minpoly {
        config: PathBuf,
        /// Which sequence to analyse.
        #[arg(long, value_enum, default_value = "nu")]
        sequence: SequenceArg,
        /// Degree bound (defaults to the family bound, or dim^2).
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Binomial/periodic decomposition of the indicator sequence.
    Decompose {
        config: PathBuf,
        /// Period; derived from the minimal polynomial when omitted.
        #[arg(long)]
        e: Option<u64>,
        /// Binomial depth; derived from the minimal polynomial when
        /// omitted.
        #[arg(long)]
        m: Option<usize>,
        /// Degree bound for the derivation of e and m (needed for custom
        /// algebras without a family bound).
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Evaluate the partition generating function {L; a, m} at a root of
    /// unity.
    Qfunction {
        l: u64,
        a: u64,
        m: u64,
        /// Conductor N of the evaluation point.
        #[arg(long)]
        conductor: u64,
        /// Evaluation point zeta_N^k.
        #[arg(long, default_value = "1")]
        omega_power: i64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Check structural identities of the indicator family.
    Crosscheck {
        config: PathBuf,
        /// Comma-separated subset of
        /// dual,tensor,double,op,cop,reflection,integrality.
        #[arg(long, value_delimiter = ',')]
        identities: Vec<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        from: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "8")]
        to: i64,
        #[command(flatten)]
        out: CommonOut,
    },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_MATH_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BOUND: u8 = 3;
pub const EXIT_IO: u8 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::from(EXIT_OK);
                }
                _ => {
                    eprint!("{e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
        }
    };
    match run::dispatch(cli.command) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
