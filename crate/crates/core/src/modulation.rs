//! Square M-QAM link adaptation primitives.
//!
//! A scheme of level `k` has `M = 4^k` points on a `sqrt(M) x sqrt(M)` grid,
//! carries `2k` bits per symbol and is scaled to unit mean energy. The
//! threshold table maps every level to the lowest linear SNR at which the
//! exact AWGN symbol error rate meets a target.

use std::fmt;

use num_complex::Complex64;

use crate::special::{linear_to_db, q_function};
use crate::{Error, Result};

/// Highest supported level (`4^12` points). Constellations this large are
/// never simulated, but the formulas stay well defined.
pub const MAX_LEVEL: u32 = 12;

/// Square QAM with `4^level` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModulationScheme {
    level: u32,
}

impl ModulationScheme {
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::InvalidLevel {
                level,
                max: MAX_LEVEL,
            });
        }
        Ok(Self { level })
    }

    /// The first `levels` schemes: QPSK, 16QAM, 64QAM, ...
    pub fn first(levels: u32) -> Result<Vec<Self>> {
        (1..=levels).map(Self::new).collect()
    }

    pub fn level(self) -> u32 {
        self.level
    }

    /// `M = 4^k`.
    pub fn cardinality(self) -> usize {
        1usize << (2 * self.level)
    }

    /// Points per axis, `sqrt(M) = 2^k`.
    pub fn side(self) -> usize {
        1usize << self.level
    }

    pub fn bits_per_symbol(self) -> u32 {
        2 * self.level
    }

    /// Symbols needed to carry at least `block_bits` bits.
    pub fn symbols_per_block(self, block_bits: u32) -> u32 {
        block_bits.div_ceil(self.bits_per_symbol())
    }

    /// Per-axis scale that gives the grid `{±1, ±3, ...}` unit mean energy.
    pub fn scale(self) -> f64 {
        let m = self.cardinality() as f64;
        (3.0 / (2.0 * (m - 1.0))).sqrt()
    }

    /// Minimum Euclidean distance of the unit-energy constellation, `sqrt(6/(M-1))`.
    pub fn min_distance(self) -> f64 {
        2.0 * self.scale()
    }

    pub fn name(self) -> String {
        match self.level {
            1 => "QPSK".to_string(),
            _ => format!("{}QAM", self.cardinality()),
        }
    }
}

impl fmt::Display for ModulationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A point of the constellation together with its Gray label.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstellationPoint {
    pub symbol: Complex64,
    pub label: u32,
}

/// Materialized constellation. Point `index = a * side + b` sits at
/// `(2a - side + 1, 2b - side + 1) * scale`; the label is the per-axis
/// reflected Gray code of `a` (high bits) and `b` (low bits).
#[derive(Clone, Debug)]
pub struct Constellation {
    scheme: ModulationScheme,
    points: Vec<ConstellationPoint>,
}

impl Constellation {
    pub fn new(scheme: ModulationScheme) -> Self {
        let side = scheme.side();
        let scale = scheme.scale();
        let k = scheme.level();
        let points = (0..side)
            .flat_map(|a| (0..side).map(move |b| (a, b)))
            .map(|(a, b)| ConstellationPoint {
                symbol: Complex64::new(axis_value(a, side) * scale, axis_value(b, side) * scale),
                label: (gray(a as u32) << k) | gray(b as u32),
            })
            .collect();
        Self { scheme, points }
    }

    pub fn scheme(&self) -> ModulationScheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ConstellationPoint] {
        &self.points
    }

    pub fn symbol(&self, index: usize) -> Complex64 {
        self.points[index].symbol
    }

    /// Index of the point carrying `label`.
    pub fn index_of_label(&self, label: u32) -> Option<usize> {
        self.points.iter().position(|p| p.label == label)
    }

    pub fn mean_energy(&self) -> f64 {
        self.points.iter().map(|p| p.symbol.norm_sqr()).sum::<f64>() / self.len() as f64
    }

    pub fn demodulate(&self, y: Complex64, gain: Complex64, amplitude: f64) -> usize {
        demodulate_ml(y, gain, amplitude, self.scheme)
    }
}

fn axis_value(index: usize, side: usize) -> f64 {
    (2 * index) as f64 - (side - 1) as f64
}

fn gray(x: u32) -> u32 {
    x ^ (x >> 1)
}

/// Maximum-likelihood decision for `y = amplitude * gain * s + noise`.
///
/// The square grid makes the Euclidean argmin separable, so each axis is
/// sliced independently after derotation. Exact midpoints resolve towards
/// the lower axis index, which yields the lowest constellation index among
/// all minimizers. A zero effective gain leaves every point equidistant and
/// returns index 0.
pub fn demodulate_ml(y: Complex64, gain: Complex64, amplitude: f64, ms: ModulationScheme) -> usize {
    let effective = gain * amplitude;
    let power = effective.norm_sqr();
    if power == 0.0 || !power.is_finite() {
        return 0;
    }
    let z = y * effective.conj() / power;
    let side = ms.side();
    let scale = ms.scale();
    let a = slice_axis(z.re / scale, side);
    let b = slice_axis(z.im / scale, side);
    a * side + b
}

fn slice_axis(u: f64, side: usize) -> usize {
    // Grid value 2a - (side - 1); position x = a in continuous coordinates.
    let x = (u + (side - 1) as f64) / 2.0;
    let a = (x - 0.5).ceil();
    if a <= 0.0 || a.is_nan() {
        0
    } else if a >= (side - 1) as f64 {
        side - 1
    } else {
        a as usize
    }
}

/// Exact symbol error probability of square M-QAM over AWGN at linear SNR `gamma`:
/// `4(1-1/sqrt(M)) Q(x) - 4(1-1/sqrt(M))^2 Q(x)^2` with `x = sqrt(3 gamma/(M-1))`.
pub fn ser_awgn(ms: ModulationScheme, gamma: f64) -> f64 {
    let m = ms.cardinality() as f64;
    let c = 1.0 - 1.0 / m.sqrt();
    let q = q_function((3.0 * gamma.max(0.0) / (m - 1.0)).sqrt());
    4.0 * c * q - 4.0 * c * c * q * q
}

/// Largest `gamma` bracket end the threshold solver will search up to.
const SOLVER_CEILING: f64 = 1e12;

/// Linear SNR at which `ser_awgn(ms, gamma) == ser_target`, by bisection.
pub fn solve_threshold(ms: ModulationScheme, ser_target: f64) -> Result<f64> {
    let max = ser_awgn(ms, 0.0);
    if !(ser_target > 0.0 && ser_target < max) || ser_target < ser_awgn(ms, SOLVER_CEILING) {
        return Err(Error::UnattainableSerTarget {
            target: ser_target,
            max,
        });
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while ser_awgn(ms, hi) > ser_target {
        lo = hi;
        hi *= 2.0;
    }
    // Relative tolerance 1e-9 on gamma is met long before the iteration cap.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ser_awgn(ms, mid) > ser_target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Approximate mean demodulation-error energy `E|s_hat - s|^2` at a relay
/// with first-hop SNR `gamma1`: `24/(M + sqrt(M)) Q(sqrt(3 gamma1/(M-1)))`.
pub fn error_energy_expectation(ms: ModulationScheme, gamma1: f64) -> f64 {
    let m = ms.cardinality() as f64;
    24.0 / (m + m.sqrt()) * q_function((3.0 * gamma1.max(0.0) / (m - 1.0)).sqrt())
}

/// Per-level SNR thresholds for a fixed SER target.
///
/// Level `k` (1-based) is usable at linear SNR `gamma` iff `gamma >= threshold(k)`.
/// `threshold(L + 1)` is `+inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdTable {
    ser_target: f64,
    thresholds: Vec<f64>,
}

impl ThresholdTable {
    /// Solves thresholds for the first `levels` schemes.
    pub fn solve(ser_target: f64, levels: u32) -> Result<Self> {
        if levels == 0 {
            return Err(Error::InvalidConfig(
                "at least one modulation level is required".into(),
            ));
        }
        let thresholds = ModulationScheme::first(levels)?
            .into_iter()
            .map(|ms| solve_threshold(ms, ser_target))
            .collect::<Result<Vec<_>>>()?;
        Self::from_linear(ser_target, thresholds)
    }

    /// Builds a table from explicit linear thresholds (level 1 first).
    pub fn from_linear(ser_target: f64, thresholds: Vec<f64>) -> Result<Self> {
        if thresholds.is_empty() || thresholds.len() > MAX_LEVEL as usize {
            return Err(Error::InvalidConfig(format!(
                "threshold table needs 1..={MAX_LEVEL} entries, got {}",
                thresholds.len()
            )));
        }
        if thresholds.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidConfig(
                "thresholds must be positive and finite".into(),
            ));
        }
        if thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "thresholds must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            ser_target,
            thresholds,
        })
    }

    pub fn ser_target(&self) -> f64 {
        self.ser_target
    }

    /// Number of candidate schemes `L`.
    pub fn levels(&self) -> u32 {
        self.thresholds.len() as u32
    }

    pub fn schemes(&self) -> Vec<ModulationScheme> {
        (1..=self.levels())
            .map(|k| ModulationScheme { level: k })
            .collect()
    }

    /// `Γ_(k)` for `k` in `1..=L+1`; `+inf` past the top level.
    pub fn threshold(&self, level: u32) -> f64 {
        assert!(level >= 1, "levels are 1-based");
        self.thresholds
            .get(level as usize - 1)
            .copied()
            .unwrap_or(f64::INFINITY)
    }

    pub fn threshold_of(&self, ms: ModulationScheme) -> f64 {
        self.threshold(ms.level())
    }

    pub fn linear(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn threshold_db(&self, level: u32) -> f64 {
        linear_to_db(self.threshold(level))
    }

    /// Highest level whose threshold `gamma` reaches, if any.
    pub fn level_for(&self, gamma: f64) -> Option<ModulationScheme> {
        let reached = self.thresholds.partition_point(|&t| t <= gamma);
        (reached > 0).then_some(ModulationScheme {
            level: reached as u32,
        })
    }
}
