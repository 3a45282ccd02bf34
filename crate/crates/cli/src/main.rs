use std::path::PathBuf;
use std::process::ExitCode;

use ck_entropy::LogBase;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "ckent", version, about = "Entropy of subshifts of finite type and exact Cuntz-Krieger checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Matrix file: JSON {"n": .., "rows": [[..]]} or whitespace-separated rows.
    #[arg(long, global = true)]
    pub matrix: Option<PathBuf>,
    /// Power-iteration tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Largest word length for growth estimates.
    #[arg(long = "k-max", global = true)]
    pub k_max: Option<usize>,
    /// Word length for `words`.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true, default_value_t = 2)]
    pub n0: usize,
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Base::Natural)]
    pub base: Base,
    /// List the words themselves, not only their number.
    #[arg(long, global = true)]
    pub list: bool,
    #[arg(long = "inject-fault", global = true, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Parse and validate a 0-1 matrix and report its structure.
    Validate,
    /// Entropy by spectral radius, Parry measure and word growth.
    Entropy,
    /// Count (and optionally list) the admissible words of length --k.
    Words,
    /// Parry measure: stochastic matrix, stationary vector, entropy.
    Parry,
    /// Edge matrix of a nonnegative integer matrix.
    Dual,
    /// Table of word-growth estimates for k = 1..=k-max.
    Convergence,
    /// Check the Cuntz-Krieger relations exactly.
    VerifyCk,
    /// Check the closed forms of rho_m phi^l on generators exactly.
    #[command(name = "verify-lemma2")]
    VerifyClosedForms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Natural,
    Bits,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::Natural => LogBase::Natural,
            Base::Bits => LogBase::Bits,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    Relation,
    Witness,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command, &cli.opts) {
        Ok(Outcome { stdout, warnings, mismatch }) => {
            for w in warnings {
                eprintln!("WARNING: {w}");
            }
            print!("{stdout}");
            ExitCode::from(if mismatch { 1 } else { 0 })
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
