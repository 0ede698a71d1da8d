use std::process::ExitCode;

use bicaloric_cli::selfcheck::cmd_selfcheck;
use bicaloric_cli::{
    cmd_construct, cmd_decompose, cmd_dims, cmd_rp_sweep, cmd_sharpness, render, CliError, Format,
    Report,
};
use clap::{Parser, Subcommand};

/// Dimension tables, sharpness checks and reverse-Poincaré sweeps for
/// biharmonic and bicaloric polynomials.
#[derive(Parser)]
#[command(name = "bicaloric", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel dimensions per degree, cross-checked against closed formulas.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        force: bool,
    },
    /// Both sides of the sharpness identity at degree 4d.
    Sharpness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        force: bool,
    },
    /// Extends a t-free seed to a bicaloric polynomial.
    Construct {
        #[arg(long)]
        n: usize,
        seed: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Splits a polynomial into powers of t and checks the recurrence.
    Decompose {
        #[arg(long)]
        n: usize,
        input: String,
    },
    /// Reverse-Poincaré ratios over a list of radii.
    RpSweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long = "r", value_delimiter = ',', default_value = "1,2,4,8,16,32")]
        radii: Vec<f64>,
        /// Treat the seed as a t-free biharmonic polynomial and report the spatial ratio.
        #[arg(long)]
        biharmonic: bool,
    },
    /// Runs the invariant suite.
    Selfcheck,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("BICALORIC_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("BICALORIC_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Dims { n, dmax, force } => cmd_dims(n, dmax, force),
        Command::Sharpness { n, d, force } => cmd_sharpness(n, d, force),
        Command::Construct { n, seed, k, l } => cmd_construct(&seed, n, k, l),
        Command::Decompose { n, input } => cmd_decompose(&input, n),
        Command::RpSweep { n, seed, eps, radii, biharmonic } => cmd_rp_sweep(&seed, n, eps, &radii, biharmonic),
        Command::Selfcheck => Ok(cmd_selfcheck()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", render(&report, format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("bicaloric: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
