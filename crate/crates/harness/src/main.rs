use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use almost_ortho_core::Family;
use almost_ortho_harness::format::write_report;
use almost_ortho_harness::{run_experiment, ExperimentConfig, HarnessError, Mode, OutputFormat};
use clap::Parser;

/// Shift zeros of an orthogonal polynomial at random and measure how far
/// orthogonality degrades.
#[derive(Debug, Parser)]
#[command(name = "almost-ortho", version)]
struct Cli {
    /// legendre, laguerre, hermite or chebyshev.
    #[arg(long, default_value = "legendre")]
    family: Family,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Number of shifted zeros.
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Comma separated shift bounds.
    #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4,1e-5")]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Output file; `-` or absent writes to stdout.
    #[arg(long)]
    out: Option<String>,
    /// Comma separated 0-based zero positions to shift instead of the s smallest.
    #[arg(long, value_delimiter = ',')]
    shift_indices: Option<Vec<usize>>,
    /// Force every shift to zero.
    #[arg(long)]
    zero_deltas: bool,
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let config = ExperimentConfig {
        family: cli.family,
        n: cli.n,
        s: cli.s,
        epsilons: cli.eps,
        trials: cli.trials,
        seed: cli.seed,
        mode: cli.mode,
        output: cli.format,
        shift_indices: cli.shift_indices,
        zero_deltas: cli.zero_deltas,
    };
    let reports = run_experiment(&config)?;
    let mut out: Box<dyn Write> = match cli.out.as_deref() {
        None | Some("-") => Box::new(BufWriter::new(io::stdout().lock())),
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
    };
    write_report(&mut out, &config, &reports, config.output)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
