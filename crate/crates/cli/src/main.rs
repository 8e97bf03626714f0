//! `katolab`: factorize Kato matrices, report the invariants of `M_A`,
//! and run the dynamics and symbolic checks from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
//! 3 the matrix is not a Kato matrix.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "katolab", version, about = "Exact computations on Kato matrices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

/// Exactly one input source: inline, `--file`, or stdin when both are absent.
#[derive(Debug, Args)]
pub struct Source {
    /// Inline input, e.g. `0,1;1,2` or `n=3:[2,3]`.
    input: Option<String>,
    /// Read the input from a file.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

impl Source {
    pub fn read(&self) -> Result<String, Failure> {
        input::read_input(self.input.as_deref(), self.file.as_ref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Action {
    /// `F_A(z)` for `--point`.
    Eval,
    /// `H_A(z) = F_A^{-1}(z)` for `--point`.
    Inverse,
    /// Unit-ball contraction: symbolic test plus sampled certificate.
    Contract,
    /// Sampled certificate for the `‖·‖_{1,2}` ball.
    Contract12,
    /// Dominant eigenvalue of the `B` block.
    Perron,
    /// Forward-orbit search for the stable set from `--point`.
    Stable,
    /// Whether `--point` lies in `𝔹* − F_A(𝔹*)`.
    Domain,
    /// Backward orbit of `--point` until it leaves `𝔹*`.
    Orbit,
    /// Roots of unity in the spectrum.
    Roots,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    J0,
    Generators,
    TangentNullity,
    OneformNullity,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor a matrix into elementary matrices.
    Factor(Source),
    /// Multiply out a factor word such as `n=3:[2,3]`.
    Compose(Source),
    /// Invariant report of `M_A` for a matrix or factor word.
    Invariants {
        #[command(flatten)]
        source: Source,
        /// One matrix per line; writes one JSON record per line.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["input", "file"])]
        batch: Option<PathBuf>,
    },
    /// Dynamics of the germ `z ↦ z^A`.
    Dynamics {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        action: Action,
        /// Point such as `1/2+0i;1/3-2/5i`.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = katolab::dynamics::DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Symbolic and truncated-series checks of the invariance equations.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = katolab::formal::DEFAULT_DEGREE)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
    },
}

fn run(cli: Cli) -> Result<String, Failure> {
    let f = cli.format;
    match cli.command {
        Command::Factor(src) => commands::factor(&src.read()?, f),
        Command::Compose(src) => commands::compose(&src.read()?, f),
        Command::Invariants { source, batch } => match batch {
            Some(path) => commands::batch(&path),
            None => commands::invariants(&source.read()?, f),
        },
        Command::Dynamics {
            source,
            action,
            point,
            max_iter,
            samples,
            seed,
        } => commands::dynamics(
            &source.read()?,
            &commands::DynamicsOpts {
                action,
                point,
                max_iter,
                samples,
                seed,
            },
            f,
        ),
        Command::Verify {
            source,
            degree,
            check,
        } => commands::verify(&source.read()?, degree, check, f),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    katolab::limits::digit_cap_from_env();
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::CheckFailed(out)) => {
            println!("{out}");
            eprintln!("error: a verification check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
