mod commands;
mod error;
mod output;
mod pulse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Common, Method};
use error::CliError;

/// Photon content of classical transmission-line pulses.
#[derive(Debug, Parser)]
#[command(name = "tlphoton", version)]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Tolerance: method agreement for analyze (default 1e-6), relative
    /// refinement agreement for oracle (default 1e-3).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Use c = v = hbar = 1 when a pulse file has no `line` directive.
    #[arg(long, global = true, overrides_with = "no_natural_units")]
    natural_units: bool,

    /// Require a `line` directive in pulse files.
    #[arg(long, global = true, overrides_with = "natural_units")]
    no_natural_units: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// beta2 by every applicable method, plus field and theta profiles.
    Analyze {
        pulse: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// beta2 of the split pulse against sub-pulse separation.
    Sweep {
        #[arg(long, default_value_t = 1e2)]
        min_w: f64,
        #[arg(long, default_value_t = 1e4)]
        max_w: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
    },
    /// Capture residual of window-limited couplers against window size.
    WindowScan {
        pulse: PathBuf,
        /// Largest window half-width (default 32 support widths).
        #[arg(long = "max-L")]
        max_l: Option<f64>,
        #[arg(long, default_value_t = 12)]
        levels: usize,
        /// Wavevector cutoff of the coupler grid.
        #[arg(long)]
        k_max: Option<f64>,
    },
    /// Brute-force beta2 and energy bookkeeping on refined grids.
    Oracle {
        pulse: PathBuf,
        #[arg(long, default_value_t = 1)]
        refine: usize,
        /// Treat the voltage as a pulse at rest (zero current).
        #[arg(long)]
        standing: bool,
    },
    /// Print an example pulse file.
    Example,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = Common {
        out: cli.out,
        tol: cli.tol,
        natural_units: !cli.no_natural_units,
    };
    match cli.command {
        Command::Analyze { pulse, method } => commands::analyze(&pulse, method, &common),
        Command::Sweep {
            min_w,
            max_w,
            points,
        } => commands::sweep(min_w, max_w, points, &common),
        Command::WindowScan {
            pulse,
            max_l,
            levels,
            k_max,
        } => commands::window_scan(&pulse, max_l, levels, k_max, &common),
        Command::Oracle {
            pulse,
            refine,
            standing,
        } => commands::oracle(&pulse, refine, standing, &common),
        Command::Example => {
            print!("{}", commands::canonical_pulse_text());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tlphoton: {e}");
            e.exit_code()
        }
    }
}
