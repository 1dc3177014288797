//! Throughput bounds from selection probabilities.

use std::fmt;
use std::str::FromStr;

use crate::modulation::ThresholdTable;
use crate::{Error, Result};

use super::probability::{
    event_distribution_closed, event_distribution_numeric, event_distribution_uncorrected,
    selection_distribution_exact, SelectionDistribution,
};

/// Which `Pr(A, k)` feeds the bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ProbabilityModel {
    /// Distribution of the joint selector's outcome.
    #[default]
    Exact,
    /// Event probabilities of `(U_A, V_A)`, closed form with quadrature fallback.
    EventSeries,
    /// Event probabilities from the uncorrected series (not a distribution).
    Uncorrected,
}

impl ProbabilityModel {
    pub const ALL: [ProbabilityModel; 3] = [Self::Exact, Self::EventSeries, Self::Uncorrected];

    pub fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::EventSeries => "event",
            Self::Uncorrected => "uncorrected",
        }
    }
}

impl fmt::Display for ProbabilityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProbabilityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown probability model '{s}' (exact, event, uncorrected)"
                ))
            })
    }
}

/// Selection probabilities under `model`.
pub fn selection_distribution(
    model: ProbabilityModel,
    num_relays: usize,
    table: &ThresholdTable,
    rho: f64,
) -> Result<SelectionDistribution> {
    match model {
        ProbabilityModel::Exact => Ok(selection_distribution_exact(num_relays, table, rho)),
        ProbabilityModel::EventSeries => {
            let closed = event_distribution_closed(num_relays, table, rho);
            if closed
                .iter()
                .all(|(_, _, p)| p.is_finite() && (0.0..=1.0).contains(&p))
            {
                Ok(closed)
            } else {
                event_distribution_numeric(num_relays, table, rho)
            }
        }
        ProbabilityModel::Uncorrected => Ok(event_distribution_uncorrected(num_relays, table, rho)),
    }
}

/// Throughput bounds in bits/s/Hz.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThroughputBounds {
    pub upper: f64,
    pub lower: f64,
}

/// `ζ_upper = Σ k Pr(A, k)` and `ζ_lower = Σ k (1 - SER_tgt)^{L_bit/2k} Σ_A Pr(A, k)`.
pub fn bounds_from_distribution(
    dist: &SelectionDistribution,
    ser_target: f64,
    block_bits: u32,
) -> ThroughputBounds {
    let mut upper = 0.0;
    let mut lower = 0.0;
    for k in 1..=dist.num_levels() as u32 {
        let mass = dist.level_mass(k);
        let kf = f64::from(k);
        upper += kf * mass;
        lower += kf * (1.0 - ser_target).powf(f64::from(block_bits) / (2.0 * kf)) * mass;
    }
    ThroughputBounds { upper, lower }
}

pub fn throughput_bounds(
    num_relays: usize,
    table: &ThresholdTable,
    rho: f64,
    block_bits: u32,
    model: ProbabilityModel,
) -> Result<ThroughputBounds> {
    let dist = selection_distribution(model, num_relays, table, rho)?;
    Ok(bounds_from_distribution(
        &dist,
        table.ser_target(),
        block_bits,
    ))
}
