//! `emeasure`: construct, verify, bound, compare and certify from the shell.
//!
//! Exit status is 0 when every requested check passed, 1 when a check failed
//! and 2 on bad input or an evaluation error. Failures are also reported as a
//! JSON object on stderr.

mod commands;
mod config;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Format;

#[derive(Parser, Debug)]
#[command(
    name = "emeasure",
    version,
    about = "Transcendence-measure toolkit for e^{1/n}"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// TOML file with run defaults; falls back to $EMEASURE_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub precision_bits: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Constant in d: `d=0.17` (default) or `d=0.174`.
    #[arg(long, global = true)]
    pub variant: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the normalized approximation family and its determinant.
    Construct(commands::ConstructArgs),
    /// Run the structural and analytic checks over a grid.
    Verify(commands::VerifyArgs),
    /// Evaluate the exponent and its constants.
    Bounds(commands::BoundsArgs),
    /// Compare exponents with the Mahler and EHLM bounds.
    Compare(commands::CompareArgs),
    /// Exhaustively minimize the linear form.
    Certify(commands::CertifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::Context::new(&cli.common).and_then(|ctx| {
        ctx.install_pool()?;
        match cli.command {
            Command::Construct(a) => commands::construct(&ctx, a),
            Command::Verify(a) => commands::verify(&ctx, a),
            Command::Bounds(a) => commands::bounds(&ctx, a),
            Command::Compare(a) => commands::compare(&ctx, a),
            Command::Certify(a) => commands::certify(&ctx, a),
        }
    });
    match result {
        Ok(commands::Outcome::Passed) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Failed(report)) => {
            eprintln!("{report}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("{}", output::error_report(&err));
            ExitCode::from(2)
        }
    }
}
