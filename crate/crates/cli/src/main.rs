mod commands;
mod selftest;
mod target;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "thomschur",
    version,
    about = "Schur function expansions of Thom polynomials for A_i, I_{2,2} and III_{2,2}"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Candidates {
    Default,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Subcommand)]
enum Verb {
    /// Print a closed-form expansion (A<i>, I22, III22, F, H, Ho, Po).
    Compute {
        target: String,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        /// Print the expansions for every r up to this value.
        #[arg(long, conflicts_with = "r")]
        max_r: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Check an expansion against the restriction equations of a singularity, or run
    /// the `porteous` / `uv` identity checks.
    Verify {
        target: String,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        /// File holding the expansion to check (JSON or text); defaults to the closed form.
        #[arg(long, conflicts_with = "expr")]
        input: Option<std::path::PathBuf>,
        /// Expansion to check, e.g. "S[1,3,3] + 3S[3,4]".
        #[arg(long)]
        expr: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the restriction equations of a singularity for its Schur expansion.
    Solve {
        target: String,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long, value_enum, default_value_t = Candidates::Default)]
        candidates: Candidates,
        #[command(flatten)]
        common: Common,
    },
    /// Print the d or e coefficient table.
    Table {
        kind: String,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a Schur expansion at a virtual alphabet.
    Eval {
        expr: String,
        /// The virtual alphabet, e.g. "X2 - [2x1] - [2x2]" or "A3 - B2".
        #[arg(long)]
        at: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare against the built-in golden outputs and rerun the reference checks.
    Selftest {
        /// Largest r for the range checks.
        #[arg(long, default_value_t = 6)]
        max_r: u32,
        #[command(flatten)]
        common: Common,
    },
}

/// Result of one invocation: what to print and whether everything checked out.
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

pub enum CliError {
    Usage(String),
    Failed(String),
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.verb {
        Verb::Compute {
            target,
            r,
            i,
            max_r,
            common,
        } => commands::compute(&target, r, i, max_r, common.format),
        Verb::Verify {
            target,
            r,
            i,
            input,
            expr,
            common,
        } => commands::verify(
            &target,
            r,
            i,
            input.as_deref(),
            expr.as_deref(),
            common.format,
        ),
        Verb::Solve {
            target,
            r,
            i,
            candidates,
            common,
        } => commands::solve(&target, r, i, candidates, common.format),
        Verb::Table { kind, rows, common } => commands::table(&kind, rows, common.format),
        Verb::Eval { expr, at, common } => commands::eval(&expr, &at, common.format),
        Verb::Selftest { max_r, common } => Ok(selftest::run(max_r, common.format)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.output);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Failed(msg)) => {
            print!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!(
                "usage: thomschur <compute|verify|solve|table|eval|selftest> [target] [--r N] [--i N] \
                 [--rows N] [--format json|text] [--candidates default|all] [--max-r N]"
            );
            ExitCode::from(2)
        }
    }
}
