//! Distributed beamforming over the selected relays.

use num_complex::Complex64;

use crate::modulation::{error_energy_expectation, ModulationScheme};
use crate::{Error, Result};

/// Per-relay complex weights. `weights[j]` belongs to relay `relays[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamformingWeights {
    pub relays: Vec<usize>,
    pub weights: Vec<Complex64>,
}

impl BeamformingWeights {
    pub fn total_power(&self) -> f64 {
        self.weights.iter().map(|w| w.norm_sqr()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.relays
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }
}

/// Matched weights `w_i = conj(g_i) / sqrt(sum_{j in A} |g_j|^2)`.
///
/// The relays share the source's total power (`sum |w_i|^2 = 1`) and add up
/// coherently: `sum g_i w_i = sqrt(sum |g_i|^2)`.
pub fn compute_weights(g: &[Complex64], selected: &[usize]) -> Result<BeamformingWeights> {
    let power: f64 = selected.iter().map(|&i| g[i].norm_sqr()).sum();
    if selected.is_empty() || power == 0.0 {
        return Err(Error::DegenerateChannel);
    }
    let norm = power.sqrt();
    Ok(BeamformingWeights {
        relays: selected.to_vec(),
        weights: selected.iter().map(|&i| g[i].conj() / norm).collect(),
    })
}

/// Received sample `y_d = sum_{i in A} amplitude g_i w_i s_i + noise`, where
/// `relay_symbols[j]` is the decision of relay `weights.relays[j]`.
pub fn combine_at_destination(
    relay_symbols: &[Complex64],
    g: &[Complex64],
    weights: &BeamformingWeights,
    amplitude: f64,
    noise: Complex64,
) -> Complex64 {
    assert_eq!(
        relay_symbols.len(),
        weights.relays.len(),
        "one decision per selected relay"
    );
    weights
        .iter()
        .zip(relay_symbols)
        .fold(noise, |acc, ((i, w), s)| acc + g[i] * w * s * amplitude)
}

/// Lower estimate of the destination SNR including relay decision errors:
/// `sum gamma2_i - sum gamma2_i E|delta_i|^2`, clamped at zero.
pub fn destination_snr_analytic(
    gamma1: &[f64],
    gamma2: &[f64],
    selected: &[usize],
    ms: ModulationScheme,
) -> f64 {
    let (gain, loss) = selected.iter().fold((0.0, 0.0), |(gain, loss), &i| {
        (
            gain + gamma2[i],
            loss + gamma2[i] * error_energy_expectation(ms, gamma1[i]),
        )
    });
    (gain - loss).max(0.0)
}

/// Destination SINR when relay errors are treated as independent
/// interference of power `E|delta_i|^2`:
/// `S / (1 + sum_i gamma2_i^2 E|delta_i|^2 / S)` with `S = sum gamma2_i`.
///
/// This is what an error-vector measurement at the destination sees.
pub fn destination_sinr(
    gamma1: &[f64],
    gamma2: &[f64],
    selected: &[usize],
    ms: ModulationScheme,
) -> f64 {
    let total: f64 = selected.iter().map(|&i| gamma2[i]).sum();
    if total == 0.0 {
        return 0.0;
    }
    let interference: f64 = selected
        .iter()
        .map(|&i| gamma2[i] * gamma2[i] * error_energy_expectation(ms, gamma1[i]))
        .sum();
    total / (1.0 + interference / total)
}
