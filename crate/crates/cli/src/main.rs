use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latsamp::{input_error_report, parse_spec, run, Flags};

#[derive(Parser)]
#[command(
    name = "latsamp",
    version,
    about = "Decide tightness and orthogonality of sampling on unions of shifted lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact criteria only.
    Check(Options),
    /// Run the criteria and confirm the verdict with the sampling oracle.
    Verify(Options),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct Options {
    /// Problem spec (JSON).
    spec: PathBuf,
    /// Truncation radius for oracle sums.
    #[arg(long)]
    radius: Option<u64>,
    /// Number of random trials.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Oracle agreement tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verify, opts) = match cli.command {
        Command::Check(o) => (false, o),
        Command::Verify(o) => (true, o),
    };
    let flags = Flags {
        verify,
        radius: opts.radius,
        trials: opts.trials,
        seed: opts.seed,
        tolerance: opts.tol,
    };
    let report = match parse_spec(&opts.spec) {
        Ok(spec) => run(&spec, &flags),
        Err(e) => input_error_report(&e),
    };
    let out = match opts.format {
        Format::Text => report.to_text(),
        Format::Machine => report.to_machine(),
    };
    print!("{out}");
    ExitCode::from(report.exit_code as u8)
}
