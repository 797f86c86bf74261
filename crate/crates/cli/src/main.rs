//! `augalex`: Alexander polynomials from knot contact homology data.
//!
//! Exit codes: 0 success, 2 bad input, 3 mathematically inapplicable,
//! 4 time budget exceeded.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Report, Source};
use error::CliError;

#[derive(Parser)]
#[command(name = "augalex", version, about = "Alexander polynomials from knot contact homology data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Emit JSON (sorted keys, canonical polynomial strings).
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock budget in seconds for Groebner computations.
    #[arg(long, global = true, default_value_t = 120.0)]
    timeout: f64,
}

#[derive(Args)]
struct InputArgs {
    /// Input JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Use a built-in example (`rh_trefoil`, `unknot`).
    #[arg(long)]
    builtin: Option<String>,
}

impl InputArgs {
    fn source(self) -> Result<Source, CliError> {
        Source::pick(self.input, self.builtin)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial from a DGA via branch-M cycles.
    AlexDga {
        #[command(flatten)]
        src: InputArgs,
        /// Augmentation family JSON; solved for when absent.
        #[arg(long)]
        aug: Option<PathBuf>,
    },
    /// Alexander polynomial from an augmentation polynomial.
    AlexAug {
        #[command(flatten)]
        src: InputArgs,
    },
    /// Reduced Groebner basis or elimination ideal of an ideal file.
    Groebner {
        #[arg(long)]
        input: PathBuf,
    },
    /// Augmentation polynomial candidate by elimination.
    Augpoly {
        #[command(flatten)]
        src: InputArgs,
        /// Augmentation polynomial JSON to test divisibility against.
        #[arg(long)]
        reference_aug: Option<PathBuf>,
    },
    /// Novikov determinant and identity checks.
    Novikov {
        #[arg(long)]
        input: PathBuf,
        /// Series truncation order.
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Closed-orbit list `[[sigma, m, d], ...]` for the orbit zeta function.
        #[arg(long)]
        orbits: Option<PathBuf>,
    },
    /// Alexander polynomial of a braid closure.
    Burau {
        #[command(flatten)]
        src: InputArgs,
    },
    /// Cross-route agreement on a built-in knot.
    Check {
        #[arg(long)]
        knot: String,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let budget = commands::budget(cli.timeout)?;
    match cli.command {
        Command::AlexDga { src, aug } => commands::alex_dga(&src.source()?, aug.as_deref(), &budget),
        Command::AlexAug { src } => commands::alex_aug(&src.source()?),
        Command::Groebner { input } => commands::groebner(&input, &budget),
        Command::Augpoly { src, reference_aug } => commands::augpoly(&src.source()?, reference_aug.as_deref(), &budget),
        Command::Novikov { input, order, orbits } => commands::novikov(&input, order, orbits.as_deref()),
        Command::Burau { src } => commands::burau(&src.source()?),
        Command::Check { knot } => commands::check(&knot, &budget),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|source| CliError::Write { path: path.clone(), source }),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Write { path: PathBuf::from("<stdout>"), source: e })
                }
                _ => Ok(()),
            }
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, output) = (cli.json, cli.output.clone());
    let result = run(cli).and_then(|r| emit(&if json { pretty(&r.json) } else { r.text }, output.as_ref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let (true, Some(report)) = (json, e.report()) {
                // best effort: the error itself is already on stderr
                let _ = emit(&pretty(report), output.as_ref());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
