//! Three-way check of the selection probabilities and the throughput
//! sandwich at every grid point.

use std::io::Write;

use anyhow::Result;
use relaylink_core::analytics::{
    event_distribution_closed, event_distribution_numeric, event_distribution_uncorrected,
    selection_distribution_exact, throughput_bounds, SelectionDistribution,
};
use relaylink_core::simulator::{empirical_events, empirical_pr, run_point};
use relaylink_core::special::db_to_linear;
use relaylink_core::{ProbabilityModel, Scheme};

use crate::config::ExperimentConfig;

/// Largest tolerated |z| per cell. Each point compares dozens of cells, so a
/// 3σ gate alone would fail by chance a sizeable fraction of the time.
const Z_LIMIT: f64 = 4.0;
const CLOSED_VS_QUAD: f64 = 1e-4;

struct Row {
    rho_db: f64,
    check: &'static str,
    value: f64,
    limit: Option<f64>,
}

impl Row {
    fn pass(&self) -> bool {
        self.limit.is_none_or(|l| self.value <= l)
    }
}

fn max_abs_diff(a: &SelectionDistribution, b: &SelectionDistribution) -> f64 {
    a.iter()
        .map(|(x, k, p)| (p - b.get(x, k)).abs())
        .fold(0.0, f64::max)
}

/// Largest per-cell |z| of empirical frequencies against model probabilities.
fn max_z(model: &SelectionDistribution, empirical: &SelectionDistribution, trials: u64) -> f64 {
    let n = trials as f64;
    model
        .iter()
        .map(|(a, k, p)| {
            let se = (p * (1.0 - p) / n).sqrt().max(1.0 / n);
            (empirical.get(a, k) - p).abs() / se
        })
        .fold(0.0, f64::max)
}

pub fn run(cfg: &ExperimentConfig) -> Result<bool> {
    std::fs::create_dir_all(&cfg.out)?;
    let table = cfg.network.thresholds()?;
    let n = cfg.network.num_relays;
    let mut rows = Vec::new();
    for rho_db in cfg.grid() {
        let rho = db_to_linear(rho_db);
        let net = cfg.network.with_rho(rho);
        let closed = event_distribution_closed(n, &table, rho);
        let uncorrected = event_distribution_uncorrected(n, &table, rho);
        let exact = selection_distribution_exact(n, &table, rho);
        let events_mc = empirical_events(&net, cfg.trials, cfg.seed)?;
        let selector_mc = empirical_pr(&net, cfg.trials, cfg.seed)?;
        let mut push = |check, value, limit| {
            rows.push(Row {
                rho_db,
                check,
                value,
                limit,
            })
        };
        match event_distribution_numeric(n, &table, rho) {
            Ok(quad) => {
                push(
                    "event closed vs quadrature max abs",
                    max_abs_diff(&closed, &quad),
                    Some(CLOSED_VS_QUAD),
                );
                push(
                    "event quadrature vs MC max |z|",
                    max_z(&quad, &events_mc, cfg.trials),
                    Some(Z_LIMIT),
                );
                push(
                    "uncorrected series vs quadrature max abs",
                    max_abs_diff(&uncorrected, &quad),
                    None,
                );
                push("event sum Pr + outage", quad.total(), None);
                push(
                    "TV event quadrature vs selector MC",
                    quad.tv_distance(&selector_mc),
                    None,
                );
            }
            Err(e) => {
                eprintln!("{rho_db:6.2} dB  quadrature failed: {e}");
                push("event quadrature converged", 1.0, Some(0.0));
            }
        }
        push(
            "selector exact vs MC max |z|",
            max_z(&exact, &selector_mc, cfg.trials),
            Some(Z_LIMIT),
        );
        push(
            "TV selector exact vs MC",
            exact.tv_distance(&selector_mc),
            None,
        );

        let point = run_point(&cfg.network, Scheme::Joint, rho_db, cfg.trials, cfg.seed)?;
        let b = throughput_bounds(
            n,
            &table,
            rho,
            cfg.network.block_bits,
            ProbabilityModel::Exact,
        )?;
        let (t, se) = (point.stats.throughput(), point.stats.throughput_se());
        // Distance outside the 3σ-widened band, zero when inside.
        let outside = (b.lower - 3.0 * se - t)
            .max(t - b.upper - 3.0 * se)
            .max(0.0);
        push(
            "throughput outside [lower, upper] +- 3se",
            outside,
            Some(0.0),
        );
        if cfg.model != ProbabilityModel::Exact {
            let alt = throughput_bounds(n, &table, rho, cfg.network.block_bits, cfg.model)?;
            push("throughput minus model upper bound", t - alt.upper, None);
        }
    }

    let mut csv = std::io::BufWriter::new(std::fs::File::create(cfg.out.join("validation.csv"))?);
    writeln!(csv, "rho_db,check,value,limit,pass")?;
    let mut all = true;
    for r in &rows {
        let limit = r.limit.map(|l| format!("{l:e}")).unwrap_or_default();
        let verdict = match r.limit {
            None => "info",
            Some(_) if r.pass() => "pass",
            Some(_) => "fail",
        };
        all &= r.pass();
        writeln!(
            csv,
            "{:.2},{},{:.6e},{limit},{verdict}",
            r.rho_db, r.check, r.value
        )?;
        println!(
            "[{:<4}] {:6.2} dB  {:<42} {:.4e}",
            verdict.to_uppercase(),
            r.rho_db,
            r.check,
            r.value
        );
    }
    csv.flush()?;
    println!("validation {}", if all { "passed" } else { "FAILED" });
    Ok(all)
}
