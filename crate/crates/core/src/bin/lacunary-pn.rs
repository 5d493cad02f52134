use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lacunary_pn::scenario::{run_scenario, Format, RunOptions};

/// Run a scenario file and report the overall verdict through the exit code
/// (0 holds, 1 fails, 2 inconclusive, 3 and up for errors).
#[derive(Parser)]
#[command(version)]
struct Args {
    #[arg(long)]
    scenario: PathBuf,
    /// Number of blocks to inspect.
    #[arg(long)]
    horizon_blocks: Option<usize>,
    /// Directory for the report; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for planted sequences.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = RunOptions {
        horizon_blocks: args.horizon_blocks,
        out: args.out,
        format: args.format,
        seed: args.seed,
    };
    match run_scenario(&args.scenario, &opts) {
        Ok(outcome) => {
            match &outcome.written {
                Some(path) => eprintln!("{}: {}", outcome.status(), path.display()),
                None => {
                    let _ = std::io::stdout().write_all(outcome.rendered.as_bytes());
                }
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
