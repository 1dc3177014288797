//! `relaylink`: threshold tables, Monte Carlo sweeps, analytic curves,
//! cross-validation and signaling budgets.

mod config;
mod plot;
mod validate;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use relaylink_core::analytics::{bounds_from_distribution, selection_distribution};
use relaylink_core::report;
use relaylink_core::signaling::{signaling_budget, Duplex, FeedbackScheme, FieldWidths};
use relaylink_core::simulator::run_sweep;
use relaylink_core::special::db_to_linear;
use relaylink_core::{ProbabilityModel, Scheme, ThresholdTable};

use config::{ExperimentConfig, Overrides};

#[derive(Parser, Debug)]
#[command(
    name = "relaylink",
    version,
    about = "Joint relay selection and link adaptation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the SNR threshold of every modulation level.
    Thresholds(ThresholdArgs),
    /// Monte Carlo sweep for each scheme; writes throughput, SER and
    /// selection-histogram CSVs plus a plot script.
    Simulate(CommonArgs),
    /// Selection probabilities and throughput bounds over the grid.
    Analytic(CommonArgs),
    /// Closed form vs quadrature vs Monte Carlo, and the bound sandwich.
    Validate(CommonArgs),
    /// Feedback bit budgets over a range of relay counts.
    Signaling(SignalingArgs),
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long)]
    ser_target: Option<f64>,
    #[arg(long)]
    levels: Option<u32>,
    /// Also write thresholds.csv into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    relays: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    snr_db_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    snr_db_stop: Option<f64>,
    #[arg(long)]
    snr_db_step: Option<f64>,
    /// Blocks per SNR point.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    ser_target: Option<f64>,
    #[arg(long)]
    block_bits: Option<u32>,
    #[arg(long)]
    levels: Option<u32>,
    /// joint, all_relays, fixed_qpsk, fixed_16qam, ... (repeat or comma-separate).
    #[arg(long = "scheme", value_delimiter = ',')]
    schemes: Vec<Scheme>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Probabilities behind the bounds: exact, event or uncorrected.
    #[arg(long)]
    model: Option<ProbabilityModel>,
}

impl CommonArgs {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(path) => Overrides::parse_file(path)?,
            None => Overrides::default(),
        };
        let flags = Overrides {
            relays: self.relays,
            snr_db_start: self.snr_db_start,
            snr_db_stop: self.snr_db_stop,
            snr_db_step: self.snr_db_step,
            trials: self.trials,
            seed: self.seed,
            ser_target: self.ser_target,
            block_bits: self.block_bits,
            levels: self.levels,
            schemes: (!self.schemes.is_empty()).then(|| self.schemes.clone()),
            out: self.out.clone(),
            model: self.model,
        };
        ExperimentConfig::resolve(file.overlay(flags))
    }
}

#[derive(Args, Debug)]
struct SignalingArgs {
    #[arg(long, default_value_t = 1)]
    relays_min: u32,
    #[arg(long, default_value_t = 20)]
    relays_max: u32,
    /// Number of modulation levels; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',', default_values_t = [4u32])]
    levels: Vec<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating output directory {}", dir.display()))
}

fn write_echo(cfg: &ExperimentConfig) -> Result<()> {
    let mut w = create(&cfg.out, "config.txt")?;
    w.write_all(cfg.echo().as_bytes())?;
    w.flush()?;
    Ok(())
}

fn cmd_thresholds(args: &ThresholdArgs) -> Result<()> {
    let table = ThresholdTable::solve(args.ser_target.unwrap_or(1e-4), args.levels.unwrap_or(4))
        .context("solving thresholds")?;
    report::write_thresholds(io::stdout().lock(), &table)?;
    if let Some(dir) = &args.out {
        ensure_dir(dir)?;
        let mut w = create(dir, "thresholds.csv")?;
        report::write_thresholds(&mut w, &table)?;
        w.flush()?;
    }
    Ok(())
}

fn cmd_simulate(cfg: &ExperimentConfig) -> Result<()> {
    ensure_dir(&cfg.out)?;
    let grid = cfg.grid();
    let mut sweeps = Vec::new();
    for &scheme in &cfg.schemes {
        let sweep = run_sweep(&cfg.network, &grid, cfg.trials, scheme, cfg.seed)?;
        for p in &sweep.points {
            println!(
                "{scheme:<14} {:6.2} dB  throughput {:.4} +- {:.4}  SER {:.3e}  outage {:.4}",
                p.rho_db,
                p.stats.throughput(),
                p.stats.throughput_se(),
                p.stats.ser(),
                p.stats.outage()
            );
        }
        sweeps.push(sweep);
    }
    let mut w = create(&cfg.out, "throughput.csv")?;
    report::write_throughput(&mut w, &sweeps)?;
    w.flush()?;
    let mut w = create(&cfg.out, "ser.csv")?;
    report::write_ser(&mut w, &sweeps)?;
    w.flush()?;
    let mut w = create(&cfg.out, "selection_hist.csv")?;
    report::write_histogram(&mut w, &sweeps)?;
    w.flush()?;
    fs::write(cfg.out.join(plot::SCRIPT_NAME), plot::script())?;
    write_echo(cfg)?;
    println!("wrote {}", cfg.out.display());
    Ok(())
}

fn cmd_analytic(cfg: &ExperimentConfig) -> Result<bool> {
    ensure_dir(&cfg.out)?;
    let table = cfg.network.thresholds()?;
    let n = cfg.network.num_relays;
    let mut pr_rows = Vec::new();
    let mut bound_rows = Vec::new();
    let mut ok = true;
    for rho_db in cfg.grid() {
        match selection_distribution(cfg.model, n, &table, db_to_linear(rho_db)) {
            Ok(dist) => {
                let b = bounds_from_distribution(&dist, table.ser_target(), cfg.network.block_bits);
                println!(
                    "{rho_db:6.2} dB  zeta_lower {:.4}  zeta_upper {:.4}  outage {:.3e}",
                    b.lower,
                    b.upper,
                    dist.outage()
                );
                bound_rows.push((rho_db, b, dist.outage()));
                pr_rows.push((rho_db, dist));
            }
            Err(e) => {
                eprintln!("{rho_db:6.2} dB  skipped: {e}");
                ok = false;
            }
        }
    }
    let mut w = create(&cfg.out, "analytic_pr.csv")?;
    report::write_pr(&mut w, &pr_rows)?;
    w.flush()?;
    let mut w = create(&cfg.out, "analytic_bounds.csv")?;
    report::write_bounds(&mut w, &bound_rows)?;
    w.flush()?;
    write_echo(cfg)?;
    Ok(ok)
}

fn cmd_signaling(args: &SignalingArgs) -> Result<()> {
    anyhow::ensure!(
        args.relays_min >= 1 && args.relays_min <= args.relays_max,
        "relay range must satisfy 1 <= min <= max"
    );
    anyhow::ensure!(
        args.levels.iter().all(|&l| l >= 1),
        "levels must be at least 1"
    );
    let mut rows = Vec::new();
    for &levels in &args.levels {
        for n in args.relays_min..=args.relays_max {
            for scheme in FeedbackScheme::ALL {
                for duplex in Duplex::ALL {
                    rows.push(signaling_budget(
                        scheme,
                        duplex,
                        n,
                        levels,
                        FieldWidths::default(),
                    ));
                }
            }
        }
    }
    report::write_signaling(io::stdout().lock(), &rows)?;
    if let Some(dir) = &args.out {
        ensure_dir(dir)?;
        let mut w = create(dir, "signaling.csv")?;
        report::write_signaling(&mut w, &rows)?;
        w.flush()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Thresholds(a) => cmd_thresholds(&a).map(|_| true),
        Command::Simulate(a) => cmd_simulate(&a.resolve()?).map(|_| true),
        Command::Analytic(a) => cmd_analytic(&a.resolve()?),
        Command::Validate(a) => validate::run(&a.resolve()?),
        Command::Signaling(a) => cmd_signaling(&a).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
