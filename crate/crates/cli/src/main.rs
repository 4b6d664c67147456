//! `pentagonal`: evaluate and verify the weighted cosine-sum bounds.
//!
//! Exit codes: 0 all checks pass, 1 input error, 2 bound violation,
//! 3 solver failure.

mod commands;
mod output;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Failure, Outcome, SharpnessArgs, SweepArgs};
use output::Format;

const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pentagonal",
    version,
    about = "Sharp bounds for weighted cosine sums over angles summing to pi"
)]
struct Cli {
    /// Absolute tolerance for bound checks (relative for identity residuals).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// Number of weights; inferred from --weights when omitted.
    #[arg(long)]
    n: Option<usize>,

    /// Comma-separated positive weights, e.g. 1,2,3,4,5.
    #[arg(long, allow_hyphen_values = true)]
    weights: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable bound at given weights and angles.
    Bound {
        #[command(flatten)]
        inputs: Inputs,
        /// Comma-separated angles summing to pi: radians or multiples like pi/5, 2pi/5.
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
        /// Allow the conjectured bound for odd n >= 9.
        #[arg(long)]
        experimental: bool,
    },
    /// List all 24 circular arrangements of five weights with their phi values.
    Arrange {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Check the twelve difference identities behind the minimal arrangement.
    #[command(name = "lemma1-check")]
    Lemma1Check {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Maximise the cosine sum over all angles and compare with the bounds.
    Sharpness {
        #[command(flatten)]
        inputs: Inputs,
        /// Seed for the random ascent starts.
        #[arg(long, default_value_t = pentagonal::sharpness::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        starts: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// Seeded Monte-Carlo search for bound violations.
    Sweep {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = pentagonal::sharpness::DEFAULT_SEED)]
        seed: u64,
        /// Allow the conjectured bound for odd n >= 9.
        #[arg(long)]
        experimental: bool,
        /// Write one json-lines record per sample to this file.
        #[arg(long, value_name = "PATH")]
        emit_samples: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let weights = |i: &Inputs| parse::weights(&i.weights).map_err(Failure::Input);
    match &cli.command {
        Command::Bound {
            inputs,
            angles,
            experimental,
        } => {
            let angles = parse::angles(angles).map_err(Failure::Input)?;
            commands::bound(inputs.n, &weights(inputs)?, &angles, cli.tol, *experimental)
        }
        Command::Arrange { inputs } => commands::arrange(inputs.n, &weights(inputs)?, cli.tol),
        Command::Lemma1Check { inputs } => {
            commands::lemma1_check(inputs.n, &weights(inputs)?, cli.tol)
        }
        Command::Sharpness {
            inputs,
            seed,
            starts,
            max_iter,
        } => commands::sharpness(
            inputs.n,
            &weights(inputs)?,
            &SharpnessArgs {
                tol: cli.tol,
                seed: *seed,
                starts: *starts,
                max_iter: *max_iter,
            },
        ),
        Command::Sweep {
            n,
            samples,
            seed,
            experimental,
            emit_samples,
        } => commands::sweep(&SweepArgs {
            n: *n,
            samples: *samples,
            seed: *seed,
            tol: cli.tol,
            experimental: *experimental,
            emit_samples: emit_samples.as_deref(),
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = output::render(&mut out, cli.format, &outcome.records, &outcome.notes)
                .and_then(|_| out.flush())
            {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
            if outcome.violation {
                ExitCode::from(EXIT_VIOLATION)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Solver(m)) => {
            eprintln!("solver failure: {m}");
            ExitCode::from(EXIT_SOLVER)
        }
    }
}
