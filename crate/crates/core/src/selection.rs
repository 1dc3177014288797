//! Joint modulation and relay selection.
//!
//! Every relay reports the highest scheme its first hop supports. The
//! destination then picks the highest scheme `m` for which the relays able
//! to decode `m` jointly reach `Γ_(m)` on the second hop, and broadcasts
//! only `m`: a relay transmits iff its own level is at least `m`.

use crate::modulation::{ModulationScheme, ThresholdTable};
use crate::{Error, Result};

/// Largest relay count accepted by [`select_exhaustive`].
pub const EXHAUSTIVE_MAX_RELAYS: usize = 20;

/// Chosen scheme and the relays that forward; `ms == None` is outage.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SelectionOutcome {
    pub ms: Option<ModulationScheme>,
    /// Selected relay indices, ascending.
    pub relays: Vec<usize>,
}

impl SelectionOutcome {
    pub fn outage() -> Self {
        Self::default()
    }

    pub fn is_outage(&self) -> bool {
        self.ms.is_none()
    }

    pub fn num_selected(&self) -> usize {
        self.relays.len()
    }

    fn transmit(ms: ModulationScheme, mut relays: Vec<usize>) -> Self {
        relays.sort_unstable();
        Self {
            ms: Some(ms),
            relays,
        }
    }
}

/// Highest scheme relay `i` decodes within the SER target on its first hop.
pub fn per_relay_ms(gamma1: f64, thresholds: &ThresholdTable) -> Option<ModulationScheme> {
    thresholds.level_for(gamma1)
}

fn check_lengths(gamma1: &[f64], gamma2: &[f64]) {
    assert_eq!(
        gamma1.len(),
        gamma2.len(),
        "per-hop SNR lists must have equal length"
    );
}

/// Relays ordered by reported level (descending), then first-hop SNR
/// (descending), then index. Relays without a usable level are dropped.
fn ranked_relays(gamma1: &[f64], thresholds: &ThresholdTable) -> Vec<(usize, u32)> {
    let mut ranked: Vec<(usize, u32)> = gamma1
        .iter()
        .enumerate()
        .filter_map(|(i, &g)| per_relay_ms(g, thresholds).map(|ms| (i, ms.level())))
        .collect();
    ranked.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then_with(|| gamma1[b.0].total_cmp(&gamma1[a.0]))
            .then_with(|| a.0.cmp(&b.0))
    });
    ranked
}

/// Joint selection: one sort plus at most `L` threshold checks.
///
/// Levels are visited from the top. The candidate set for level `m` is the
/// sorted prefix of relays reporting at least `m`; it only grows as `m`
/// decreases, so the running second-hop SNR is extended, never recomputed.
/// Levels that no relay reports exactly are still checked with the
/// unchanged prefix, which keeps the result equal to the exhaustive optimum.
pub fn select_joint(
    gamma1: &[f64],
    gamma2: &[f64],
    thresholds: &ThresholdTable,
) -> SelectionOutcome {
    check_lengths(gamma1, gamma2);
    let ranked = ranked_relays(gamma1, thresholds);
    let mut prefix = 0;
    let mut snr = 0.0;
    for level in (1..=thresholds.levels()).rev() {
        while prefix < ranked.len() && ranked[prefix].1 >= level {
            snr += gamma2[ranked[prefix].0];
            prefix += 1;
        }
        if prefix > 0 && snr >= thresholds.threshold(level) {
            let ms = ModulationScheme::new(level).expect("table levels are valid");
            return SelectionOutcome::transmit(ms, ranked[..prefix].iter().map(|r| r.0).collect());
        }
    }
    SelectionOutcome::outage()
}

/// Literal boundary walk: the threshold is tested only where the reported
/// level changes along the sorted list (the end of the list counts as a
/// change). It can miss a feasible level that no relay reports exactly, so
/// it is not always optimal; kept to quantify that gap.
pub fn select_boundary_walk(
    gamma1: &[f64],
    gamma2: &[f64],
    thresholds: &ThresholdTable,
) -> SelectionOutcome {
    check_lengths(gamma1, gamma2);
    let ranked = ranked_relays(gamma1, thresholds);
    let mut snr = 0.0;
    for (i, &(relay, level)) in ranked.iter().enumerate() {
        snr += gamma2[relay];
        let boundary = ranked.get(i + 1).is_none_or(|next| next.1 != level);
        if boundary && snr >= thresholds.threshold(level) {
            let ms = ModulationScheme::new(level).expect("table levels are valid");
            return SelectionOutcome::transmit(ms, ranked[..=i].iter().map(|r| r.0).collect());
        }
    }
    SelectionOutcome::outage()
}

/// Brute-force best-throughput search over every (scheme, relay subset).
///
/// A pair is admissible when every member decodes the scheme on its first
/// hop and the members' summed second-hop SNR reaches the threshold. Among
/// admissible pairs the highest rate wins, then the largest second-hop SNR,
/// then the largest subset.
pub fn select_exhaustive(
    gamma1: &[f64],
    gamma2: &[f64],
    thresholds: &ThresholdTable,
) -> Result<SelectionOutcome> {
    check_lengths(gamma1, gamma2);
    let n = gamma1.len();
    if n > EXHAUSTIVE_MAX_RELAYS {
        return Err(Error::TooManyRelays {
            n,
            max: EXHAUSTIVE_MAX_RELAYS,
        });
    }
    let levels: Vec<u32> = gamma1
        .iter()
        .map(|&g| per_relay_ms(g, thresholds).map_or(0, |ms| ms.level()))
        .collect();
    for level in (1..=thresholds.levels()).rev() {
        let mut best: Option<(f64, u32, u32)> = None;
        for mask in 1u32..(1u32 << n) {
            let members = (0..n).filter(|i| mask & (1 << i) != 0);
            if members.clone().any(|i| levels[i] < level) {
                continue;
            }
            let snr: f64 = members.map(|i| gamma2[i]).sum();
            if snr < thresholds.threshold(level) {
                continue;
            }
            let size = mask.count_ones();
            let better = match best {
                None => true,
                Some((s, c, _)) => snr > s || (snr == s && size > c),
            };
            if better {
                best = Some((snr, size, mask));
            }
        }
        if let Some((_, _, mask)) = best {
            let relays = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let ms = ModulationScheme::new(level).expect("table levels are valid");
            return Ok(SelectionOutcome::transmit(ms, relays));
        }
    }
    Ok(SelectionOutcome::outage())
}

/// A relay forwards iff it can decode the broadcast scheme.
pub fn broadcast_decision(
    per_relay_level: Option<ModulationScheme>,
    ms_star: Option<ModulationScheme>,
) -> bool {
    matches!((per_relay_level, ms_star), (Some(own), Some(star)) if own >= star)
}

/// Relay set implied at every relay by a broadcast `ms_star`.
pub fn broadcast_selected(
    gamma1: &[f64],
    ms_star: Option<ModulationScheme>,
    thresholds: &ThresholdTable,
) -> Vec<usize> {
    gamma1
        .iter()
        .enumerate()
        .filter(|&(_, &g)| broadcast_decision(per_relay_ms(g, thresholds), ms_star))
        .map(|(i, _)| i)
        .collect()
}

/// Baseline: relay selection with a fixed scheme. Every relay decoding `ms`
/// forwards; the block is sent iff their summed second-hop SNR reaches `Γ(ms)`.
pub fn select_fixed_ms(
    ms: ModulationScheme,
    gamma1: &[f64],
    gamma2: &[f64],
    thresholds: &ThresholdTable,
) -> SelectionOutcome {
    check_lengths(gamma1, gamma2);
    let relays = broadcast_selected(gamma1, Some(ms), thresholds);
    let snr: f64 = relays.iter().map(|&i| gamma2[i]).sum();
    if !relays.is_empty() && snr >= thresholds.threshold_of(ms) {
        SelectionOutcome::transmit(ms, relays)
    } else {
        SelectionOutcome::outage()
    }
}

/// Baseline: link adaptation without relay selection. All relays forward, so
/// the scheme must be decodable by the weakest first hop and supported by the
/// full second-hop sum.
pub fn select_all_relays(
    gamma1: &[f64],
    gamma2: &[f64],
    thresholds: &ThresholdTable,
) -> SelectionOutcome {
    check_lengths(gamma1, gamma2);
    if gamma1.is_empty() {
        return SelectionOutcome::outage();
    }
    let weakest = gamma1.iter().copied().fold(f64::INFINITY, f64::min);
    let total: f64 = gamma2.iter().sum();
    match thresholds.level_for(weakest.min(total)) {
        Some(ms) => SelectionOutcome::transmit(ms, (0..gamma1.len()).collect()),
        None => SelectionOutcome::outage(),
    }
}
