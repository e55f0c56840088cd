use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ldpcdo_cli::commands::{self, SweepQuantity};
use ldpcdo_cli::config::{Overrides, PaymentDates, RunConfig, SimMode};
use ldpcdo_cli::verify::{self, Level};
use ldpcdo_cli::CliError;

/// Large-pool pricing of investment-grade CDO tranches.
#[derive(Debug, Parser)]
#[command(name = "ldpcdo", version)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the pool size.
    #[arg(long, global = true)]
    n: Option<u64>,
    /// Override the simulation seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the number of simulated paths.
    #[arg(long, global = true)]
    paths: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Asymptotic protection leg, spread and S*_N.
    Price,
    /// Asymptotic prices over a range of pool sizes, as CSV.
    Sweep {
        #[arg(long)]
        n_from: u64,
        #[arg(long)]
        n_to: u64,
        #[arg(long, default_value_t = 1)]
        n_step: u64,
        #[arg(long, value_enum, default_value_t = SweepQuantity::Spread)]
        quantity: SweepQuantity,
    },
    /// Per-path CSV and a JSON summary from plain or tilted simulation.
    Simulate {
        /// Override the sampling mode.
        #[arg(long, value_enum)]
        mode: Option<SimMode>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the summary here instead of stderr.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
    /// Flat hazard rate matching a CDS spread; prints the curve JSON.
    Calibrate {
        #[arg(long, allow_hyphen_values = true)]
        spread: f64,
        /// `quarterly` or a comma-separated list of payment times.
        #[arg(long, default_value = "quarterly", value_parser = PaymentDates::parse)]
        dates: PaymentDates,
        #[arg(long, default_value_t = 0.0)]
        rate: f64,
        #[arg(long)]
        t_expiry: f64,
    },
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("this command needs --config PATH".into()))?;
    let mut cfg = RunConfig::load(path)?;
    cfg.apply(Overrides {
        n: cli.n,
        seed: cli.seed,
        paths: cli.paths,
    });
    Ok(cfg)
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    match &cli.command {
        Command::Price => commands::price(&load(cli)?, &mut out)?,
        Command::Sweep {
            n_from,
            n_to,
            n_step,
            quantity,
        } => commands::sweep(&load(cli)?, *n_from, *n_to, *n_step, *quantity, &mut out)?,
        Command::Simulate { mode, csv, summary } => {
            let mut cfg = load(cli)?;
            if let Some(m) = mode {
                cfg.simulation.mode = *m;
            }
            let mut csv_out: Box<dyn Write> = match csv {
                Some(p) => Box::new(create(p)?),
                None => Box::new(&mut out),
            };
            let mut summary_out: Box<dyn Write> = match summary {
                Some(p) => Box::new(create(p)?),
                None => Box::new(&mut err),
            };
            commands::simulate(&cfg, &mut csv_out, &mut summary_out)?;
            csv_out.flush()?;
            summary_out.flush()?;
        }
        Command::Verify { level } => {
            let result = verify::verify(*level, &mut out);
            out.flush()?;
            result?
        }
        Command::Calibrate {
            spread,
            dates,
            rate,
            t_expiry,
        } => commands::calibrate(*spread, dates, *rate, *t_expiry, &mut out, &mut err)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("LDPCDO_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
