//! Experiment configuration: defaults, a flat `key = value` file, and flag
//! overrides, in increasing precedence.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use relaylink_core::{NetworkConfig, ProbabilityModel, Scheme};

/// Values as they arrive from a file or the command line; `None` means unset.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub relays: Option<usize>,
    pub snr_db_start: Option<f64>,
    pub snr_db_stop: Option<f64>,
    pub snr_db_step: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub ser_target: Option<f64>,
    pub block_bits: Option<u32>,
    pub levels: Option<u32>,
    pub schemes: Option<Vec<Scheme>>,
    pub out: Option<PathBuf>,
    pub model: Option<ProbabilityModel>,
}

impl Overrides {
    /// Fields set in `other` replace ours.
    pub fn overlay(self, other: Overrides) -> Overrides {
        Overrides {
            relays: other.relays.or(self.relays),
            snr_db_start: other.snr_db_start.or(self.snr_db_start),
            snr_db_stop: other.snr_db_stop.or(self.snr_db_stop),
            snr_db_step: other.snr_db_step.or(self.snr_db_step),
            trials: other.trials.or(self.trials),
            seed: other.seed.or(self.seed),
            ser_target: other.ser_target.or(self.ser_target),
            block_bits: other.block_bits.or(self.block_bits),
            levels: other.levels.or(self.levels),
            schemes: other.schemes.or(self.schemes),
            out: other.out.or(self.out),
            model: other.model.or(self.model),
        }
    }

    pub fn parse_file(path: &Path) -> Result<Overrides> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse_str(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse_str(text: &str) -> Result<Overrides> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", lineno + 1);
            };
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            let ctx = || format!("line {}: bad value '{value}' for {key}", lineno + 1);
            match key.as_str() {
                "relays" => o.relays = Some(value.parse().with_context(ctx)?),
                "snr_db_start" => o.snr_db_start = Some(value.parse().with_context(ctx)?),
                "snr_db_stop" => o.snr_db_stop = Some(value.parse().with_context(ctx)?),
                "snr_db_step" => o.snr_db_step = Some(value.parse().with_context(ctx)?),
                "trials" => o.trials = Some(value.parse().with_context(ctx)?),
                "seed" => o.seed = Some(value.parse().with_context(ctx)?),
                "ser_target" => o.ser_target = Some(value.parse().with_context(ctx)?),
                "block_bits" => o.block_bits = Some(value.parse().with_context(ctx)?),
                "levels" => o.levels = Some(value.parse().with_context(ctx)?),
                "schemes" | "scheme" => {
                    let list = value
                        .split(',')
                        .map(|s| s.trim().parse::<Scheme>())
                        .collect::<relaylink_core::Result<Vec<_>>>()
                        .with_context(ctx)?;
                    o.schemes = Some(list);
                }
                "out" => o.out = Some(PathBuf::from(value)),
                "model" => o.model = Some(value.parse().with_context(ctx)?),
                _ => bail!("line {}: unknown key '{key}'", lineno + 1),
            }
        }
        Ok(o)
    }
}

/// Fully resolved experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub network: NetworkConfig,
    pub snr_db_start: f64,
    pub snr_db_stop: f64,
    pub snr_db_step: f64,
    pub trials: u64,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    pub out: PathBuf,
    pub model: ProbabilityModel,
}

impl ExperimentConfig {
    pub fn resolve(o: Overrides) -> Result<Self> {
        let levels = o.levels.unwrap_or(4);
        let cfg = ExperimentConfig {
            network: NetworkConfig {
                num_relays: o.relays.unwrap_or(5),
                rho: 1.0,
                ser_target: o.ser_target.unwrap_or(1e-4),
                block_bits: o.block_bits.unwrap_or(1000),
                levels,
            },
            snr_db_start: o.snr_db_start.unwrap_or(10.0),
            snr_db_stop: o.snr_db_stop.unwrap_or(35.0),
            snr_db_step: o.snr_db_step.unwrap_or(2.5),
            trials: o.trials.unwrap_or(10_000),
            seed: o.seed.unwrap_or(1),
            schemes: o.schemes.unwrap_or_else(|| Scheme::all(levels)),
            out: o.out.unwrap_or_else(|| PathBuf::from("results")),
            model: o.model.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.network.validate()?;
        self.network.thresholds()?;
        if !(self.snr_db_step > 0.0 && self.snr_db_step.is_finite()) {
            bail!("SNR step must be positive, got {}", self.snr_db_step);
        }
        if !(self.snr_db_start.is_finite() && self.snr_db_stop.is_finite())
            || self.snr_db_start > self.snr_db_stop
        {
            bail!(
                "SNR grid start {} must not exceed stop {}",
                self.snr_db_start,
                self.snr_db_stop
            );
        }
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.schemes.is_empty() {
            bail!("no schemes requested");
        }
        for s in &self.schemes {
            if let Scheme::FixedMs(ms) = s {
                if ms.level() > self.network.levels {
                    bail!(
                        "scheme {s} is above the {} configured levels",
                        self.network.levels
                    );
                }
            }
        }
        Ok(())
    }

    /// Grid points in dB, snapped to 1e-9 dB so that accumulated steps
    /// produce clean values.
    pub fn grid(&self) -> Vec<f64> {
        let count =
            ((self.snr_db_stop - self.snr_db_start) / self.snr_db_step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let x = self.snr_db_start + i as f64 * self.snr_db_step;
                (x * 1e9).round() / 1e9
            })
            .collect()
    }

    /// The resolved configuration in the file format `--config` reads.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let n = &self.network;
        let schemes: Vec<String> = self.schemes.iter().map(|s| s.name()).collect();
        let _ = writeln!(s, "relays = {}", n.num_relays);
        let _ = writeln!(s, "snr_db_start = {}", self.snr_db_start);
        let _ = writeln!(s, "snr_db_stop = {}", self.snr_db_stop);
        let _ = writeln!(s, "snr_db_step = {}", self.snr_db_step);
        let _ = writeln!(s, "trials = {}", self.trials);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "ser_target = {:e}", n.ser_target);
        let _ = writeln!(s, "block_bits = {}", n.block_bits);
        let _ = writeln!(s, "levels = {}", n.levels);
        let _ = writeln!(s, "schemes = {}", schemes.join(","));
        let _ = writeln!(s, "model = {}", self.model);
        s
    }
}
