//! Symbol-level Monte Carlo of the two-hop network.
//!
//! Every trial is one coherence block. Channel and symbol randomness come
//! from per-trial substreams keyed by the SNR point, so all schemes see the
//! same channels and noise (common random numbers) and results do not
//! depend on thread count or scheduling.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::analytics::SelectionDistribution;
use crate::beamform::{combine_at_destination, compute_weights};
use crate::channel::{
    complex_gaussian, draw_channels, hop_snrs, substream, NetworkConfig, StreamKind,
};
use crate::modulation::{demodulate_ml, Constellation, ModulationScheme, ThresholdTable};
use crate::selection::{select_all_relays, select_fixed_ms, select_joint, SelectionOutcome};
use crate::special::db_to_linear;
use crate::{Error, Result};

/// Transmission strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Joint relay selection and link adaptation.
    Joint,
    /// Relay selection with one fixed modulation.
    FixedMs(ModulationScheme),
    /// Link adaptation with every relay forwarding.
    AllRelays,
}

impl Scheme {
    /// Joint, all-relays and every fixed scheme up to `levels`.
    pub fn all(levels: u32) -> Vec<Scheme> {
        let mut out = vec![Scheme::Joint, Scheme::AllRelays];
        out.extend(
            (1..=levels).map(|l| Scheme::FixedMs(ModulationScheme::new(l).expect("valid level"))),
        );
        out
    }

    pub fn name(self) -> String {
        match self {
            Scheme::Joint => "joint".into(),
            Scheme::AllRelays => "all_relays".into(),
            Scheme::FixedMs(ms) => format!("fixed_{}", ms.name().to_lowercase()),
        }
    }

    pub fn select(
        self,
        gamma1: &[f64],
        gamma2: &[f64],
        table: &ThresholdTable,
    ) -> SelectionOutcome {
        match self {
            Scheme::Joint => select_joint(gamma1, gamma2, table),
            Scheme::FixedMs(ms) => select_fixed_ms(ms, gamma1, gamma2, table),
            Scheme::AllRelays => select_all_relays(gamma1, gamma2, table),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    /// `joint`, `all_relays` (or `all`), `fixed_qpsk`, `fixed_16qam`, ...,
    /// or `fixed:<level>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "joint" => return Ok(Scheme::Joint),
            "all" | "all_relays" => return Ok(Scheme::AllRelays),
            _ => {}
        }
        let bad = || Error::InvalidConfig(format!("unknown scheme '{s}'"));
        let rest = s
            .strip_prefix("fixed_")
            .or_else(|| s.strip_prefix("fixed:"))
            .ok_or_else(bad)?;
        let level = match rest {
            "qpsk" | "4qam" => 1,
            _ => match rest.strip_suffix("qam") {
                Some(m) => {
                    let m: u64 = m.parse().map_err(|_| bad())?;
                    if m < 4 || !m.is_power_of_two() || !m.trailing_zeros().is_multiple_of(2) {
                        return Err(bad());
                    }
                    m.trailing_zeros() / 2
                }
                None => rest.parse().map_err(|_| bad())?,
            },
        };
        Ok(Scheme::FixedMs(ModulationScheme::new(level)?))
    }
}

/// Outcome of one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub ms: Option<ModulationScheme>,
    pub num_selected: usize,
    pub symbol_errors: u64,
    pub symbols_sent: u64,
    pub block_success: bool,
    pub delivered_bits: u64,
}

impl TrialRecord {
    /// Throughput in bits/s/Hz over the two hops: `k` on success, else 0.
    pub fn throughput(&self) -> f64 {
        match self.ms {
            Some(ms) if self.block_success => f64::from(ms.level()),
            _ => 0.0,
        }
    }
}

/// Substream point key for an SNR given in dB. Keyed by value so that the
/// same SNR reproduces the same trials in any grid.
pub fn point_key(rho_db: f64) -> u64 {
    rho_db.to_bits()
}

/// Simulates trial `trial` at SNR point `point` under `scheme`.
///
/// Source power is one and the noise power per sample `1/rho`. Each selected
/// relay makes an ML decision on its own observation and forwards it with
/// its beamforming weight. The destination demodulates against the
/// error-free effective gain `sqrt(sum |g_i|^2)`.
pub fn run_trial(
    config: &NetworkConfig,
    table: &ThresholdTable,
    scheme: Scheme,
    master_seed: u64,
    point: u64,
    trial: u64,
) -> TrialRecord {
    let mut channel_rng = substream(master_seed, point, trial, StreamKind::Channel);
    let realization = draw_channels(config, &mut channel_rng);
    let (gamma1, gamma2) = hop_snrs(config, &realization);
    let outcome = scheme.select(&gamma1, &gamma2, table);
    let ms = match outcome.ms {
        Some(ms) => ms,
        None => {
            return TrialRecord {
                ms: None,
                num_selected: 0,
                symbol_errors: 0,
                symbols_sent: 0,
                block_success: false,
                delivered_bits: 0,
            }
        }
    };
    // A selection meeting a positive threshold has nonzero second-hop gain.
    let weights = compute_weights(&realization.g, &outcome.relays)
        .expect("selected relays have second-hop gain");
    let effective_gain = Complex64::new(gain_norm(&realization.g, &outcome.relays), 0.0);
    let constellation = Constellation::new(ms);
    let noise_power = config.noise_power();
    let symbols = u64::from(ms.symbols_per_block(config.block_bits));
    let mut rng = substream(master_seed, point, trial, StreamKind::Symbols);
    let mut decisions = vec![Complex64::new(0.0, 0.0); outcome.relays.len()];
    let mut errors = 0;
    for _ in 0..symbols {
        let index = rng.random_range(0..constellation.len());
        let s = constellation.symbol(index);
        for (slot, &i) in decisions.iter_mut().zip(&outcome.relays) {
            let h = realization.h[i];
            let y = h * s + complex_gaussian(&mut rng, noise_power);
            *slot = constellation.symbol(demodulate_ml(y, h, 1.0, ms));
        }
        let noise = complex_gaussian(&mut rng, noise_power);
        let y = combine_at_destination(&decisions, &realization.g, &weights, 1.0, noise);
        if demodulate_ml(y, effective_gain, 1.0, ms) != index {
            errors += 1;
        }
    }
    let success = errors == 0;
    TrialRecord {
        ms: Some(ms),
        num_selected: outcome.relays.len(),
        symbol_errors: errors,
        symbols_sent: symbols,
        block_success: success,
        delivered_bits: if success {
            u64::from(config.block_bits)
        } else {
            0
        },
    }
}

fn gain_norm(g: &[Complex64], relays: &[usize]) -> f64 {
    relays.iter().map(|&i| g[i].norm_sqr()).sum::<f64>().sqrt()
}

/// Integer sufficient statistics of a batch of trials. Merging is exact, so
/// any reduction order gives identical results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointStats {
    pub trials: u64,
    /// `Σ k` over successful blocks.
    pub level_sum: u64,
    /// `Σ k²` over successful blocks.
    pub level_sq_sum: u64,
    pub successes: u64,
    pub outages: u64,
    pub symbols: u64,
    pub symbol_errors: u64,
    /// Per-block `Σ e²`, `Σ n²`, `Σ e·n` for the cluster-robust SER variance.
    pub errors_sq: u128,
    pub symbols_sq: u128,
    pub errors_symbols: u128,
    /// Outcome counts indexed `(A-1)·L + (k-1)`.
    pub histogram: Vec<u64>,
    num_relays: usize,
    levels: usize,
}

impl PointStats {
    pub fn new(num_relays: usize, levels: usize) -> Self {
        Self {
            trials: 0,
            level_sum: 0,
            level_sq_sum: 0,
            successes: 0,
            outages: 0,
            symbols: 0,
            symbol_errors: 0,
            errors_sq: 0,
            symbols_sq: 0,
            errors_symbols: 0,
            histogram: vec![0; num_relays * levels],
            num_relays,
            levels,
        }
    }

    pub fn push(&mut self, record: &TrialRecord) {
        self.trials += 1;
        match record.ms {
            None => self.outages += 1,
            Some(ms) => {
                let k = u64::from(ms.level());
                self.histogram[(record.num_selected - 1) * self.levels + (k as usize - 1)] += 1;
                if record.block_success {
                    self.successes += 1;
                    self.level_sum += k;
                    self.level_sq_sum += k * k;
                }
            }
        }
        let (e, n) = (
            u128::from(record.symbol_errors),
            u128::from(record.symbols_sent),
        );
        self.symbols += record.symbols_sent;
        self.symbol_errors += record.symbol_errors;
        self.errors_sq += e * e;
        self.symbols_sq += n * n;
        self.errors_symbols += e * n;
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.level_sum += other.level_sum;
        self.level_sq_sum += other.level_sq_sum;
        self.successes += other.successes;
        self.outages += other.outages;
        self.symbols += other.symbols;
        self.symbol_errors += other.symbol_errors;
        self.errors_sq += other.errors_sq;
        self.symbols_sq += other.symbols_sq;
        self.errors_symbols += other.errors_symbols;
        for (a, b) in self.histogram.iter_mut().zip(&other.histogram) {
            *a += b;
        }
        self
    }

    pub fn throughput(&self) -> f64 {
        self.level_sum as f64 / self.trials as f64
    }

    /// Standard error of [`Self::throughput`].
    pub fn throughput_se(&self) -> f64 {
        let n = self.trials as f64;
        let mean = self.throughput();
        let var = (self.level_sq_sum as f64 / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
        (var / n).sqrt()
    }

    pub fn ser(&self) -> f64 {
        if self.symbols == 0 {
            0.0
        } else {
            self.symbol_errors as f64 / self.symbols as f64
        }
    }

    /// Standard error of [`Self::ser`] treating blocks as clusters, since
    /// errors within a block share one channel draw.
    pub fn ser_se(&self) -> f64 {
        if self.symbols == 0 {
            return 0.0;
        }
        let r = self.ser();
        let n = self.symbols as f64;
        // Σ (e_i - r n_i)² over blocks, clusters are the trials.
        let resid = self.errors_sq as f64 - 2.0 * r * self.errors_symbols as f64
            + r * r * self.symbols_sq as f64;
        let blocks = self.trials as f64;
        let correction = blocks / (blocks - 1.0).max(1.0);
        (resid.max(0.0) * correction).sqrt() / n
    }

    pub fn outage(&self) -> f64 {
        self.outages as f64 / self.trials as f64
    }

    pub fn selection(&self) -> SelectionDistribution {
        SelectionDistribution::from_counts(
            self.num_relays,
            self.levels,
            &self.histogram,
            self.outages,
        )
    }

    /// Count of outcome `(A, k)`.
    pub fn count(&self, a: usize, k: u32) -> u64 {
        self.histogram[(a - 1) * self.levels + (k as usize - 1)]
    }
}

/// Aggregates at one SNR point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub rho_db: f64,
    pub stats: PointStats,
}

/// One scheme over an SNR grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub scheme: Scheme,
    pub seed: u64,
    pub points: Vec<PointResult>,
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidConfig(
            "at least one trial is required".into(),
        ));
    }
    Ok(())
}

/// Runs trials `range` at `rho_db` in parallel.
fn run_range(
    config: &NetworkConfig,
    table: &ThresholdTable,
    scheme: Scheme,
    seed: u64,
    rho_db: f64,
    range: std::ops::Range<u64>,
) -> PointStats {
    let cfg = config.with_rho(db_to_linear(rho_db));
    let point = point_key(rho_db);
    let levels = table.levels() as usize;
    range
        .into_par_iter()
        .fold(
            || PointStats::new(cfg.num_relays, levels),
            |mut acc, t| {
                acc.push(&run_trial(&cfg, table, scheme, seed, point, t));
                acc
            },
        )
        .reduce(
            || PointStats::new(cfg.num_relays, levels),
            PointStats::merge,
        )
}

/// `trials` blocks at one SNR.
pub fn run_point(
    config: &NetworkConfig,
    scheme: Scheme,
    rho_db: f64,
    trials: u64,
    seed: u64,
) -> Result<PointResult> {
    config.validate()?;
    check_trials(trials)?;
    let table = config.thresholds()?;
    Ok(PointResult {
        rho_db,
        stats: run_range(config, &table, scheme, seed, rho_db, 0..trials),
    })
}

/// `trials` blocks at every grid point. `config.rho` is ignored.
pub fn run_sweep(
    config: &NetworkConfig,
    snr_grid_db: &[f64],
    trials: u64,
    scheme: Scheme,
    seed: u64,
) -> Result<SweepResult> {
    config.validate()?;
    check_trials(trials)?;
    let table = config.thresholds()?;
    let points = snr_grid_db
        .iter()
        .map(|&rho_db| PointResult {
            rho_db,
            stats: run_range(config, &table, scheme, seed, rho_db, 0..trials),
        })
        .collect();
    Ok(SweepResult {
        scheme,
        seed,
        points,
    })
}

/// Runs blocks in fixed-size batches until at least `min_symbols` symbols
/// have been sent or `max_trials` is reached. Batch boundaries do not depend
/// on scheduling, so the result is deterministic.
pub fn run_until_symbols(
    config: &NetworkConfig,
    scheme: Scheme,
    rho_db: f64,
    min_symbols: u64,
    max_trials: u64,
    seed: u64,
) -> Result<PointResult> {
    config.validate()?;
    check_trials(max_trials)?;
    let table = config.thresholds()?;
    const BATCH: u64 = 4096;
    let mut stats = PointStats::new(config.num_relays, table.levels() as usize);
    let mut next = 0;
    while stats.symbols < min_symbols && next < max_trials {
        let end = (next + BATCH).min(max_trials);
        stats = stats.merge(run_range(config, &table, scheme, seed, rho_db, next..end));
        next = end;
    }
    Ok(PointResult { rho_db, stats })
}

/// Frequencies of the joint selector's `(A, k)` over channel draws only.
pub fn empirical_pr(
    config: &NetworkConfig,
    trials: u64,
    seed: u64,
) -> Result<SelectionDistribution> {
    config.validate()?;
    check_trials(trials)?;
    let table = config.thresholds()?;
    let n = config.num_relays;
    let levels = table.levels() as usize;
    let point = config.rho.to_bits();
    let (counts, outages) = (0..trials)
        .into_par_iter()
        .fold(
            || (vec![0u64; n * levels], 0u64),
            |(mut counts, mut outages), t| {
                let r = draw_channels(config, &mut substream(seed, point, t, StreamKind::Channel));
                let (g1, g2) = hop_snrs(config, &r);
                let o = select_joint(&g1, &g2, &table);
                match o.ms {
                    Some(ms) => {
                        counts[(o.relays.len() - 1) * levels + ms.level() as usize - 1] += 1
                    }
                    None => outages += 1,
                }
                (counts, outages)
            },
        )
        .reduce(
            || (vec![0u64; n * levels], 0u64),
            |(mut a, oa), (b, ob)| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                (a, oa + ob)
            },
        );
    Ok(SelectionDistribution::from_counts(
        n, levels, &counts, outages,
    ))
}

/// Frequencies of the `(U_A, V_A)` events `Γ_k <= U_A < Γ_{k+1}`, `V_A < Γ_k`
/// with relays ranked by first-hop SNR. Several events can hold in one draw,
/// so the entries need not sum to one; the outage slot holds the fraction of
/// draws in which none holds.
pub fn empirical_events(
    config: &NetworkConfig,
    trials: u64,
    seed: u64,
) -> Result<SelectionDistribution> {
    config.validate()?;
    check_trials(trials)?;
    let table = config.thresholds()?;
    let n = config.num_relays;
    let levels = table.levels() as usize;
    let point = config.rho.to_bits();
    let mut counts = vec![0u64; n * levels];
    let mut none = 0;
    for t in 0..trials {
        let r = draw_channels(config, &mut substream(seed, point, t, StreamKind::Channel));
        let (g1, g2) = hop_snrs(config, &r);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| g1[b].total_cmp(&g1[a]));
        let mut any = false;
        let mut z = 0.0;
        for a in 1..=n {
            z += g2[order[a - 1]];
            let u = z.min(g1[order[a - 1]]);
            let v = if a < n { g1[order[a]] } else { 0.0 };
            for k in 1..=levels as u32 {
                if u >= table.threshold(k) && u < table.threshold(k + 1) && v < table.threshold(k) {
                    counts[(a - 1) * levels + k as usize - 1] += 1;
                    any = true;
                }
            }
        }
        if !any {
            none += 1;
        }
    }
    let scale = 1.0 / trials as f64;
    let mut dist = SelectionDistribution::zeros(n, levels);
    for a in 1..=n {
        for k in 1..=levels as u32 {
            dist.set(
                a,
                k,
                counts[(a - 1) * levels + k as usize - 1] as f64 * scale,
            );
        }
    }
    dist.set_outage(none as f64 * scale);
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{selection_distribution_exact, throughput_bounds, ProbabilityModel};
    use crate::modulation::ser_awgn;
    use crate::special::q_function;

    fn config(n: usize) -> NetworkConfig {
        NetworkConfig {
            num_relays: n,
            rho: 1.0,
            ser_target: 1e-4,
            block_bits: 1000,
            levels: 4,
        }
    }

    #[test]
    fn scheme_names_parse() {
        for s in Scheme::all(4) {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!(
            "fixed:3".parse::<Scheme>().unwrap(),
            Scheme::FixedMs(ModulationScheme::new(3).unwrap())
        );
        assert_eq!("all".parse::<Scheme>().unwrap(), Scheme::AllRelays);
        for bad in ["fixed_8qam", "fixed_0", "relay", "fixed_32qam"] {
            assert!(bad.parse::<Scheme>().is_err(), "{bad}");
        }
    }

    #[test]
    fn noiseless_block_succeeds() {
        let cfg = config(3).with_rho(1e14);
        let table = cfg.thresholds().unwrap();
        for trial in 0..50 {
            let r = run_trial(&cfg, &table, Scheme::Joint, 1, 0, trial);
            assert_eq!(r.ms.map(|m| m.level()), Some(4));
            assert_eq!(r.symbol_errors, 0);
            assert!(r.block_success);
            assert_eq!(r.delivered_bits, 1000);
            assert_eq!(r.symbols_sent, 125);
        }
    }

    #[test]
    fn outage_delivers_nothing() {
        let cfg = config(2).with_rho(1e-3);
        let table = cfg.thresholds().unwrap();
        let r = run_trial(&cfg, &table, Scheme::Joint, 1, 0, 0);
        assert_eq!(r.ms, None);
        assert_eq!(
            (r.symbols_sent, r.symbol_errors, r.delivered_bits),
            (0, 0, 0)
        );
        assert!(!r.block_success);
        assert_eq!(r.throughput(), 0.0);
    }

    #[test]
    fn record_invariants() {
        let cfg = config(5).with_rho(db_to_linear(17.0));
        let table = cfg.thresholds().unwrap();
        for scheme in Scheme::all(4) {
            for trial in 0..200 {
                let r = run_trial(&cfg, &table, scheme, 5, 0, trial);
                match r.ms {
                    Some(ms) => {
                        assert_eq!(r.symbols_sent, u64::from(ms.symbols_per_block(1000)));
                        assert!(r.num_selected >= 1);
                    }
                    None => assert_eq!(r.symbols_sent, 0),
                }
                assert_eq!(r.block_success, r.ms.is_some() && r.symbol_errors == 0);
                assert_eq!(r.delivered_bits == 1000, r.block_success);
            }
        }
    }

    #[test]
    fn single_trial_sweep_equals_trial() {
        let cfg = config(4);
        let table = cfg.thresholds().unwrap();
        let s = run_sweep(&cfg, &[20.0], 1, Scheme::Joint, 77).unwrap();
        let r = run_trial(
            &cfg.with_rho(db_to_linear(20.0)),
            &table,
            Scheme::Joint,
            77,
            point_key(20.0),
            0,
        );
        let p = &s.points[0].stats;
        assert_eq!(p.trials, 1);
        assert_eq!(p.symbols, r.symbols_sent);
        assert_eq!(p.symbol_errors, r.symbol_errors);
        assert_eq!(p.throughput(), r.throughput());
        assert!(run_sweep(&cfg, &[20.0], 0, Scheme::Joint, 77).is_err());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let cfg = config(5);
        let grid = [12.5, 22.5];
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_sweep(&cfg, &grid, 600, Scheme::Joint, 3).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(3));
        assert_eq!(one, run(8));
    }

    #[test]
    fn same_point_same_trials_in_any_grid() {
        let cfg = config(3);
        let a = run_sweep(&cfg, &[15.0, 20.0], 200, Scheme::Joint, 9).unwrap();
        let b = run_sweep(&cfg, &[20.0], 200, Scheme::Joint, 9).unwrap();
        assert_eq!(a.points[1], b.points[0]);
    }

    #[test]
    fn single_relay_fixed_qpsk_ser_matches_two_hop_composition() {
        // One relay, fixed QPSK, symbols simulated against an analytic
        // composition of the two hops conditioned on each block's channel.
        let cfg = NetworkConfig {
            num_relays: 1,
            rho: db_to_linear(10.0),
            ser_target: 1e-2,
            block_bits: 2000,
            levels: 1,
        };
        let table = cfg.thresholds().unwrap();
        let qpsk = ModulationScheme::new(1).unwrap();
        let mut expected = 0.0;
        let mut stats = PointStats::new(1, 1);
        let point = point_key(10.0);
        let mut trial = 0;
        while stats.symbols < 1_000_000 {
            let r = run_trial(&cfg, &table, Scheme::FixedMs(qpsk), 4, point, trial);
            if r.ms.is_some() {
                let ch = draw_channels(&cfg, &mut substream(4, point, trial, StreamKind::Channel));
                let (g1, g2) = hop_snrs(&cfg, &ch);
                // Per axis, the end-to-end bit flips iff exactly one hop flips it.
                let q1 = q_function(g1[0].sqrt());
                let q2 = q_function(g2[0].sqrt());
                let axis = q1 + q2 - 2.0 * q1 * q2;
                expected += (1.0 - (1.0 - axis).powi(2)) * r.symbols_sent as f64;
                assert!((ser_awgn(qpsk, g1[0]) - (1.0 - (1.0 - q1).powi(2))).abs() < 1e-15);
            }
            stats.push(&r);
            trial += 1;
        }
        let expected = expected / stats.symbols as f64;
        let se = stats.ser_se();
        assert!(
            (stats.ser() - expected).abs() < 3.5 * se,
            "measured {} expected {expected} se {se}",
            stats.ser()
        );
        assert!(stats.ser() <= 1e-2);
    }

    #[test]
    fn throughput_inside_bounds_at_25db() {
        let cfg = config(5);
        let table = cfg.thresholds().unwrap();
        let rho = db_to_linear(25.0);
        let b = throughput_bounds(5, &table, rho, 1000, ProbabilityModel::Exact).unwrap();
        let p = run_point(&cfg, Scheme::Joint, 25.0, 4000, 2).unwrap().stats;
        let se = p.throughput_se();
        assert!(p.throughput() >= b.lower - 3.0 * se && p.throughput() <= b.upper + 3.0 * se);
    }

    #[test]
    fn empirical_pr_properties() {
        let cfg = config(5).with_rho(db_to_linear(20.0));
        let d = empirical_pr(&cfg, 20_000, 8).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-12);
        let exact = selection_distribution_exact(5, &cfg.thresholds().unwrap(), cfg.rho);
        assert!(d.tv_distance(&exact) < 0.02);
        let dark = empirical_pr(&config(5).with_rho(1e-2), 1000, 8).unwrap();
        assert!(dark.outage() > 0.99);
    }

    #[test]
    fn events_can_overlap() {
        let cfg = config(5).with_rho(db_to_linear(25.0));
        let e = empirical_events(&cfg, 20_000, 8).unwrap();
        assert!(e.selected_mass() > 1.5);
    }

    #[test]
    fn run_until_symbols_reaches_target() {
        let cfg = config(3);
        let p = run_until_symbols(&cfg, Scheme::Joint, 20.0, 100_000, 1_000_000, 1).unwrap();
        assert!(p.stats.symbols >= 100_000);
        let again = run_until_symbols(&cfg, Scheme::Joint, 20.0, 100_000, 1_000_000, 1).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn cluster_se_reduces_to_binomial_for_unit_blocks() {
        let mut s = PointStats::new(1, 1);
        let q = ModulationScheme::new(1).unwrap();
        for i in 0..1000u64 {
            s.push(&TrialRecord {
                ms: Some(q),
                num_selected: 1,
                symbol_errors: u64::from(i % 10 == 0),
                symbols_sent: 1,
                block_success: i % 10 != 0,
                delivered_bits: 0,
            });
        }
        let binomial = (0.1f64 * 0.9 / 1000.0).sqrt();
        assert!((s.ser_se() - binomial).abs() < 1e-3 * binomial);
    }
}
