//! Two-hop Rayleigh block-fading channels and per-trial random streams.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::modulation::ThresholdTable;
use crate::{Error, Result};

/// Static network parameters. `rho` is the linear fading-free SNR `P_s/N_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkConfig {
    pub num_relays: usize,
    pub rho: f64,
    pub ser_target: f64,
    pub block_bits: u32,
    pub levels: u32,
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_relays == 0 {
            return Err(Error::InvalidConfig(
                "at least one relay is required".into(),
            ));
        }
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "rho must be positive, got {}",
                self.rho
            )));
        }
        if !(self.ser_target > 0.0 && self.ser_target < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "SER target must lie in (0, 1), got {}",
                self.ser_target
            )));
        }
        if self.levels == 0 {
            return Err(Error::InvalidConfig(
                "at least one modulation level is required".into(),
            ));
        }
        if self.block_bits == 0 {
            return Err(Error::InvalidConfig("block length must be positive".into()));
        }
        Ok(())
    }

    pub fn with_rho(&self, rho: f64) -> Self {
        Self {
            rho,
            ..self.clone()
        }
    }

    /// Noise power per complex sample with unit transmit power.
    pub fn noise_power(&self) -> f64 {
        1.0 / self.rho
    }

    pub fn thresholds(&self) -> Result<ThresholdTable> {
        ThresholdTable::solve(self.ser_target, self.levels)
    }
}

/// Channel gains for one coherence block: `h[i]` source to relay `i`, `g[i]`
/// relay `i` to destination.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization {
    pub h: Vec<Complex64>,
    pub g: Vec<Complex64>,
}

impl ChannelRealization {
    pub fn num_relays(&self) -> usize {
        self.h.len()
    }
}

/// Circularly-symmetric `CN(0, variance)` sample.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * s, im * s)
}

/// Draws i.i.d. `CN(0,1)` gains for every relay on both hops.
pub fn draw_channels<R: Rng + ?Sized>(config: &NetworkConfig, rng: &mut R) -> ChannelRealization {
    let n = config.num_relays;
    let h = (0..n).map(|_| complex_gaussian(rng, 1.0)).collect();
    let g = (0..n).map(|_| complex_gaussian(rng, 1.0)).collect();
    ChannelRealization { h, g }
}

/// `(gamma1, gamma2)` with `gamma1[i] = rho |h_i|^2` and `gamma2[i] = rho |g_i|^2`.
pub fn hop_snrs(config: &NetworkConfig, realization: &ChannelRealization) -> (Vec<f64>, Vec<f64>) {
    let gamma1 = realization
        .h
        .iter()
        .map(|h| config.rho * h.norm_sqr())
        .collect();
    let gamma2 = realization
        .g
        .iter()
        .map(|g| config.rho * g.norm_sqr())
        .collect();
    (gamma1, gamma2)
}

/// Independent purposes a trial draws randomness for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamKind {
    Channel = 1,
    Symbols = 2,
}

/// Counter-based substream for `(master_seed, point, trial, kind)`.
///
/// The ChaCha key is built from the seed, the stream kind and the sweep
/// point; the trial index selects the 64-bit ChaCha stream. Results never
/// depend on which worker runs a trial or in what order.
pub fn substream(master_seed: u64, point: u64, trial: u64, kind: StreamKind) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..16].copy_from_slice(&(kind as u64).to_le_bytes());
    key[16..24].copy_from_slice(&point.to_le_bytes());
    key[24..].copy_from_slice(b"relaylnk");
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n: usize, rho: f64) -> NetworkConfig {
        NetworkConfig {
            num_relays: n,
            rho,
            ser_target: 1e-4,
            block_bits: 1000,
            levels: 4,
        }
    }

    #[test]
    fn validation() {
        assert!(config(3, 10.0).validate().is_ok());
        assert!(config(0, 10.0).validate().is_err());
        assert!(config(3, 0.0).validate().is_err());
        let mut c = config(3, 10.0);
        c.levels = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn hop_snr_examples() {
        let c = config(2, 10.0);
        let r = ChannelRealization {
            h: vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            g: vec![Complex64::new(0.6, -0.8), Complex64::new(2.0, 1.0)],
        };
        let (g1, g2) = hop_snrs(&c, &r);
        assert_eq!(g1, vec![10.0, 0.0]);
        assert!((g2[0] - 10.0).abs() < 1e-12);
        assert!((g2[1] - 50.0).abs() < 1e-12);
    }

    #[test]
    fn hop_snrs_recompute_from_moduli() {
        let c = config(6, 31.6);
        let mut rng = substream(3, 0, 0, StreamKind::Channel);
        let r = draw_channels(&c, &mut rng);
        let (g1, g2) = hop_snrs(&c, &r);
        for i in 0..6 {
            let m1 = r.h[i].re.hypot(r.h[i].im);
            let m2 = r.g[i].re.hypot(r.g[i].im);
            assert!((g1[i] - c.rho * m1 * m1).abs() < 1e-12 * g1[i].max(1.0));
            assert!((g2[i] - c.rho * m2 * m2).abs() < 1e-12 * g2[i].max(1.0));
        }
    }

    #[test]
    fn unit_power_and_exponential_law() {
        let c = config(1, 1.0);
        let mut rng = substream(11, 0, 0, StreamKind::Channel);
        let n = 1_000_000;
        let mut samples: Vec<f64> = (0..n)
            .map(|_| draw_channels(&c, &mut rng).h[0].norm_sqr())
            .collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
        samples.sort_by(f64::total_cmp);
        let ks = samples
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = 1.0 - (-x).exp();
                (cdf - i as f64 / n as f64)
                    .abs()
                    .max(((i + 1) as f64 / n as f64 - cdf).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.002, "KS statistic {ks}");
    }

    #[test]
    fn substreams_are_deterministic_and_distinct() {
        let c = config(3, 10.0);
        let a = draw_channels(&c, &mut substream(42, 0, 5, StreamKind::Channel));
        let b = draw_channels(&c, &mut substream(42, 0, 5, StreamKind::Channel));
        assert_eq!(a, b);
        let other_trial = draw_channels(&c, &mut substream(42, 0, 6, StreamKind::Channel));
        let other_kind = draw_channels(&c, &mut substream(42, 0, 5, StreamKind::Symbols));
        let other_point = draw_channels(&c, &mut substream(42, 1, 5, StreamKind::Channel));
        assert_ne!(a, other_trial);
        assert_ne!(a, other_kind);
        assert_ne!(a, other_point);
    }
}
