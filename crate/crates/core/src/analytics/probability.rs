//! Probabilities of the `(A, k)` selection outcomes.
//!
//! Two families live here. The *event* probabilities integrate the joint
//! density of `(U_A, V_A)` over `U_A ∈ [Γ_k, Γ_{k+1})`, `V_A < Γ_k`. These
//! events overlap across `k`, so they are not the distribution of what the
//! selector returns. [`selection_distribution_exact`] computes that
//! distribution directly.

use crate::modulation::ThresholdTable;
use crate::quadrature::{integrate, integrate_2d, QuadOptions};
use crate::special::{binomial, ln_factorial, poisson_cdf, poisson_pmf, poisson_tail_above};
use crate::Result;

use super::density::{all_relays_min_pdf, joint_pdf_uv, joint_pdf_uv_uncorrected};

/// Probability mass over outcomes `(A, k)`, `1 <= A <= N`, `1 <= k <= L`,
/// plus the outage mass.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionDistribution {
    num_relays: usize,
    num_levels: usize,
    pr: Vec<f64>,
    outage: f64,
}

impl SelectionDistribution {
    pub fn zeros(num_relays: usize, num_levels: usize) -> Self {
        Self {
            num_relays,
            num_levels,
            pr: vec![0.0; num_relays * num_levels],
            outage: 0.0,
        }
    }

    /// Relative frequencies from outcome counts indexed like [`Self::get`].
    pub fn from_counts(num_relays: usize, num_levels: usize, counts: &[u64], outages: u64) -> Self {
        assert_eq!(counts.len(), num_relays * num_levels);
        let trials = counts.iter().sum::<u64>() + outages;
        let scale = if trials == 0 {
            0.0
        } else {
            1.0 / trials as f64
        };
        Self {
            num_relays,
            num_levels,
            pr: counts.iter().map(|&c| c as f64 * scale).collect(),
            outage: outages as f64 * scale,
        }
    }

    fn index(&self, a: usize, k: u32) -> usize {
        assert!((1..=self.num_relays).contains(&a), "A = {a} out of range");
        assert!(
            (1..=self.num_levels as u32).contains(&k),
            "k = {k} out of range"
        );
        (a - 1) * self.num_levels + (k as usize - 1)
    }

    pub fn num_relays(&self) -> usize {
        self.num_relays
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    pub fn get(&self, a: usize, k: u32) -> f64 {
        self.pr[self.index(a, k)]
    }

    pub fn set(&mut self, a: usize, k: u32, p: f64) {
        let i = self.index(a, k);
        self.pr[i] = p;
    }

    pub fn outage(&self) -> f64 {
        self.outage
    }

    pub fn set_outage(&mut self, p: f64) {
        self.outage = p;
    }

    /// Mass of level `k` summed over `A`.
    pub fn level_mass(&self, k: u32) -> f64 {
        (1..=self.num_relays).map(|a| self.get(a, k)).sum()
    }

    /// `Σ Pr(A, k)` without the outage term.
    pub fn selected_mass(&self) -> f64 {
        self.pr.iter().sum()
    }

    /// `Σ Pr(A, k) + outage`; one for a proper distribution.
    pub fn total(&self) -> f64 {
        self.selected_mass() + self.outage
    }

    /// Total-variation distance over all outcomes including outage.
    pub fn tv_distance(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.num_relays, self.num_levels),
            (other.num_relays, other.num_levels)
        );
        let body: f64 = self
            .pr
            .iter()
            .zip(&other.pr)
            .map(|(p, q)| (p - q).abs())
            .sum();
        0.5 * (body + (self.outage - other.outage).abs())
    }

    /// `(A, k, p)` for every outcome, `A` outer.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32, f64)> + '_ {
        (1..=self.num_relays)
            .flat_map(move |a| (1..=self.num_levels as u32).map(move |k| (a, k, self.get(a, k))))
    }
}

/// Scaled thresholds `Γ_k / ρ` for `k = 1..=L+1`, the last one infinite.
fn scaled(table: &ThresholdTable, rho: f64, k: u32) -> (f64, f64) {
    (table.threshold(k) / rho, table.threshold(k + 1) / rho)
}

fn check_args(a: usize, k: u32, n: usize, table: &ThresholdTable, rho: f64) {
    assert!((1..=n).contains(&a), "A = {a} must lie in 1..={n}");
    assert!((1..=table.levels()).contains(&k), "k = {k} out of range");
    assert!(rho > 0.0, "rho must be positive");
}

/// `e^{-At} Σ_{j<A} t^j/j! · e^{-t}`, i.e. `P(U_A > ρt)` up to the
/// order-statistic factor.
fn upper_tail(a: u32, t: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    (-f64::from(a) * t).exp() * poisson_cdf(a - 1, t)
}

/// Event probability `P(Γ_k <= U_A < Γ_{k+1}, V_A < Γ_k)` in closed form:
///
/// ```text
/// C(N, A) (1 - e^{-t_k})^{N-A} [T_A(t_k) - T_A(t_{k+1})],
/// T_A(t) = e^{-(A+1)t} Σ_{j<A} t^j / j!
/// ```
///
/// Valid for `A = N` as well, where the first factor is one.
pub fn pr_selection_closed(a: usize, k: u32, n: usize, table: &ThresholdTable, rho: f64) -> f64 {
    check_args(a, k, n, table, rho);
    let (lo, hi) = scaled(table, rho, k);
    let a32 = a as u32;
    let backoff = (-(-lo).exp_m1()).powi((n - a) as i32);
    binomial(n as u32, a32) * backoff * (upper_tail(a32, lo) - upper_tail(a32, hi))
}

/// Uncorrected alternating series: `1/(i!(N-A-1)!)` where the binomial
/// `C(N-A, i)/(N-A)!` belongs, and the all-relays form summing `j = 0..=N`
/// instead of `j < N`. For comparison only; it is not a probability.
pub fn pr_selection_uncorrected(
    a: usize,
    k: u32,
    n: usize,
    table: &ThresholdTable,
    rho: f64,
) -> f64 {
    check_args(a, k, n, table, rho);
    let (lo, hi) = scaled(table, rho, k);
    if a == n {
        let term = |t: f64| {
            if t.is_infinite() {
                0.0
            } else {
                (-(n as f64) * t).exp() * poisson_cdf(n as u32, t)
            }
        };
        return term(lo) - term(hi);
    }
    let a32 = a as u32;
    let inner: f64 = (0..=(n - a) as u32)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * (-lo * f64::from(i) - ln_factorial(i) - ln_factorial((n - a - 1) as u32)).exp()
        })
        .sum();
    (ln_factorial(n as u32) - ln_factorial(a32)).exp()
        * inner
        * (upper_tail(a32, lo) - upper_tail(a32, hi))
}

fn quad_options() -> QuadOptions {
    QuadOptions::with_abs_tol(1e-8)
}

fn pr_numeric_with<F>(
    a: usize,
    k: u32,
    n: usize,
    table: &ThresholdTable,
    rho: f64,
    density: F,
) -> Result<f64>
where
    F: Fn(f64, f64, u32, u32, f64) -> f64,
{
    check_args(a, k, n, table, rho);
    let lo = table.threshold(k);
    let hi = table.threshold(k + 1);
    if a == n {
        return integrate(
            |u| all_relays_min_pdf(u, n as u32, rho),
            lo,
            hi,
            &quad_options(),
        )
        .map(|e| e.value);
    }
    integrate_2d(
        |u, v| density(u, v, a as u32, n as u32, rho),
        lo,
        hi,
        |_| (0.0, lo),
        &quad_options(),
    )
    .map(|e| e.value)
}

/// The event probability by 2D quadrature of the `(U_A, V_A)` density; for
/// `A = N` a 1D integral of the density of `U_N`.
pub fn pr_selection_numeric(
    a: usize,
    k: u32,
    n: usize,
    table: &ThresholdTable,
    rho: f64,
) -> Result<f64> {
    pr_numeric_with(a, k, n, table, rho, joint_pdf_uv)
}

/// As [`pr_selection_numeric`] but integrating [`joint_pdf_uv_uncorrected`].
pub fn pr_selection_numeric_uncorrected(
    a: usize,
    k: u32,
    n: usize,
    table: &ThresholdTable,
    rho: f64,
) -> Result<f64> {
    pr_numeric_with(a, k, n, table, rho, joint_pdf_uv_uncorrected)
}

/// Event probabilities for every `(A, k)`, with the exact outage attached.
/// Because the events overlap, `total()` generally exceeds one.
pub fn event_distribution_closed(
    n: usize,
    table: &ThresholdTable,
    rho: f64,
) -> SelectionDistribution {
    event_distribution(n, table, rho, pr_selection_closed)
}

/// [`event_distribution_closed`] with the uncorrected series.
pub fn event_distribution_uncorrected(
    n: usize,
    table: &ThresholdTable,
    rho: f64,
) -> SelectionDistribution {
    event_distribution(n, table, rho, pr_selection_uncorrected)
}

fn event_distribution<F>(n: usize, table: &ThresholdTable, rho: f64, pr: F) -> SelectionDistribution
where
    F: Fn(usize, u32, usize, &ThresholdTable, f64) -> f64,
{
    let mut dist = SelectionDistribution::zeros(n, table.levels() as usize);
    for a in 1..=n {
        for k in 1..=table.levels() {
            dist.set(a, k, pr(a, k, n, table, rho));
        }
    }
    dist.set_outage(outage_exact(n, table, rho));
    dist
}

/// Quadrature counterpart of [`event_distribution_closed`].
pub fn event_distribution_numeric(
    n: usize,
    table: &ThresholdTable,
    rho: f64,
) -> Result<SelectionDistribution> {
    let mut dist = SelectionDistribution::zeros(n, table.levels() as usize);
    for a in 1..=n {
        for k in 1..=table.levels() {
            dist.set(a, k, pr_selection_numeric(a, k, n, table, rho)?);
        }
    }
    dist.set_outage(outage_exact(n, table, rho));
    Ok(dist)
}

/// Exact distribution of the joint selector's `(A, k)` under i.i.d.
/// Rayleigh fading on both hops.
///
/// Level `m` is feasible when `n_m >= 1` relays reach it on the first hop
/// and their second-hop SNRs sum to at least `Γ_m`; the selector returns the
/// highest feasible level with `A = n_m`. The counts `n_1 >= n_2 >= ...` form
/// a binomial thinning chain. Because the second-hop SNRs are independent of
/// the first hop, the sums over the nested sets are partial sums of one
/// i.i.d. exponential sequence, i.e. arrival times of a unit-rate Poisson
/// process `K` at scale `ρ`, and `Σ ≥ Γ_m` iff `K(Γ_m/ρ) <= n_m - 1`.
/// The chain state is `(n_m, min(K, N), best outcome so far)`.
pub fn selection_distribution_exact(
    n: usize,
    table: &ThresholdTable,
    rho: f64,
) -> SelectionDistribution {
    assert!(n >= 1 && rho > 0.0);
    let levels = table.levels() as usize;
    let side = n + 1;
    let outcomes = levels * side + 1;
    let idx =
        |count: usize, arrivals: usize, best: usize| (count * side + arrivals) * outcomes + best;

    let mut state = vec![0.0; side * side * outcomes];
    state[idx(n, 0, 0)] = 1.0;
    let mut prev_t = 0.0;
    for m in 1..=levels {
        let t = table.threshold(m as u32) / rho;
        let dt = t - prev_t;
        prev_t = t;
        let keep = (-dt).exp();
        let drop = -(-dt).exp_m1();
        let mut next = vec![0.0; state.len()];
        for count in 0..=n {
            let thin: Vec<f64> = (0..=count)
                .map(|c| {
                    binomial(count as u32, c as u32)
                        * keep.powi(c as i32)
                        * drop.powi((count - c) as i32)
                })
                .collect();
            for arrivals in 0..=n {
                let step: Vec<f64> = (0..=n - arrivals)
                    .map(|j| {
                        if arrivals + j == n {
                            if j == 0 {
                                1.0
                            } else {
                                poisson_tail_above((j - 1) as u32, dt)
                            }
                        } else {
                            poisson_pmf(j as u32, dt)
                        }
                    })
                    .collect();
                for best in 0..outcomes {
                    let mass = state[idx(count, arrivals, best)];
                    if mass == 0.0 {
                        continue;
                    }
                    for (c, &pc) in thin.iter().enumerate() {
                        if pc == 0.0 {
                            continue;
                        }
                        for (j, &pj) in step.iter().enumerate() {
                            let k_now = arrivals + j;
                            let feasible = c >= 1 && k_now < c;
                            let new_best = if feasible {
                                1 + (m - 1) * side + c
                            } else {
                                best
                            };
                            next[idx(c, k_now, new_best)] += mass * pc * pj;
                        }
                    }
                }
            }
        }
        state = next;
    }

    let mut dist = SelectionDistribution::zeros(n, levels);
    for (i, &mass) in state.iter().enumerate() {
        let best = i % outcomes;
        if mass == 0.0 {
            continue;
        }
        if best == 0 {
            dist.outage += mass;
        } else {
            let level = (best - 1) / side + 1;
            let a = (best - 1) % side;
            dist.pr[(a - 1) * levels + (level - 1)] += mass;
        }
    }
    dist
}

/// Exact `Pr(A, k)` of the joint selector; see [`selection_distribution_exact`].
pub fn pr_selection_exact(a: usize, k: u32, n: usize, table: &ThresholdTable, rho: f64) -> f64 {
    check_args(a, k, n, table, rho);
    selection_distribution_exact(n, table, rho).get(a, k)
}

/// Probability that no level is feasible for the joint selector.
pub fn outage_exact(n: usize, table: &ThresholdTable, rho: f64) -> f64 {
    selection_distribution_exact(n, table, rho).outage()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{draw_channels, hop_snrs, substream, NetworkConfig, StreamKind};
    use crate::selection::select_joint;
    use crate::special::db_to_linear;

    fn table() -> ThresholdTable {
        ThresholdTable::solve(1e-4, 4).unwrap()
    }

    /// Independent oracle: enumerate first-hop level counts as a multinomial
    /// and integrate the second-hop condition by brute force over
    /// compositions of the Poisson arrivals.
    fn exact_by_composition(n: usize, table: &ThresholdTable, rho: f64) -> SelectionDistribution {
        let levels = table.levels() as usize;
        let t: Vec<f64> = (1..=levels as u32)
            .map(|m| table.threshold(m) / rho)
            .collect();
        let mut bins = vec![-(-t[0]).exp_m1()];
        for m in 0..levels {
            let upper = if m + 1 < levels {
                (-t[m + 1]).exp()
            } else {
                0.0
            };
            bins.push((-t[m]).exp() - upper);
        }
        let mut dist = SelectionDistribution::zeros(n, levels);
        let mut counts = vec![0usize; levels + 1];
        fn rec(
            pos: usize,
            left: usize,
            counts: &mut Vec<usize>,
            n: usize,
            bins: &[f64],
            t: &[f64],
            dist: &mut SelectionDistribution,
        ) {
            if pos + 1 == counts.len() {
                counts[pos] = left;
                let mut weight = ln_factorial(n as u32);
                let mut p = 1.0;
                for (c, q) in counts.iter().zip(bins) {
                    weight -= ln_factorial(*c as u32);
                    p *= q.powi(*c as i32);
                }
                let p = p * weight.exp();
                if p == 0.0 {
                    return;
                }
                let levels = t.len();
                let reach: Vec<usize> = (1..=levels).map(|m| counts[m..].iter().sum()).collect();
                // Sum over arrival counts at each threshold: K(t_1) <= ... <= K(t_L).
                let mut outcome = vec![0.0; levels * (n + 1) + 1];
                #[allow(clippy::too_many_arguments)]
                fn walk(
                    m: usize,
                    k_prev: usize,
                    t_prev: f64,
                    prob: f64,
                    best: usize,
                    reach: &[usize],
                    t: &[f64],
                    n: usize,
                    outcome: &mut [f64],
                ) {
                    if m == t.len() {
                        outcome[best] += prob;
                        return;
                    }
                    let dt = t[m] - t_prev;
                    // Once n arrivals have happened nothing is feasible again.
                    for k in k_prev..=n {
                        let pj = if k == n && k_prev < n {
                            poisson_tail_above((n - k_prev - 1) as u32, dt)
                        } else if k == n {
                            1.0
                        } else {
                            poisson_pmf((k - k_prev) as u32, dt)
                        };
                        let feasible = reach[m] >= 1 && k < reach[m];
                        let b = if feasible {
                            1 + m * (n + 1) + reach[m]
                        } else {
                            best
                        };
                        walk(m + 1, k, t[m], prob * pj, b, reach, t, n, outcome);
                    }
                }
                walk(0, 0, 0.0, 1.0, 0, &reach, t, n, &mut outcome);
                for (b, &mass) in outcome.iter().enumerate() {
                    if mass == 0.0 {
                        continue;
                    }
                    if b == 0 {
                        dist.outage += p * mass;
                    } else {
                        let level = (b - 1) / (n + 1) + 1;
                        let a = (b - 1) % (n + 1);
                        dist.pr[(a - 1) * levels + (level - 1)] += p * mass;
                    }
                }
                return;
            }
            for c in 0..=left {
                counts[pos] = c;
                rec(pos + 1, left - c, counts, n, bins, t, dist);
            }
        }
        rec(0, n, &mut counts, n, &bins, &t, &mut dist);
        dist
    }

    #[test]
    fn exact_matches_composition_oracle() {
        let tab = table();
        for &(n, db) in &[(1, 20.0), (3, 15.0), (3, 25.0), (4, 20.0)] {
            let rho = db_to_linear(db);
            let dp = selection_distribution_exact(n, &tab, rho);
            let oracle = exact_by_composition(n, &tab, rho);
            assert!(
                dp.tv_distance(&oracle) < 1e-10,
                "n={n} db={db}: {}",
                dp.tv_distance(&oracle)
            );
            assert!((oracle.total() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_is_a_distribution() {
        let tab = table();
        for n in [1, 2, 5, 8, 12] {
            for db in [0.0, 10.0, 20.0, 30.0, 40.0] {
                let d = selection_distribution_exact(n, &tab, db_to_linear(db));
                assert!(
                    (d.total() - 1.0).abs() < 1e-12,
                    "n={n} db={db}: {}",
                    d.total()
                );
                assert!(d.iter().all(|(_, _, p)| p >= 0.0));
            }
        }
    }

    #[test]
    fn single_relay_closed_form() {
        // With one relay the outcome is level_for(min(γ1, γ2)), an
        // exponential with mean ρ/2.
        let tab = table();
        let rho = db_to_linear(22.0);
        let d = selection_distribution_exact(1, &tab, rho);
        for k in 1..=4 {
            let expect =
                (-2.0 * tab.threshold(k) / rho).exp() - (-2.0 * tab.threshold(k + 1) / rho).exp();
            assert!((d.get(1, k) - expect).abs() < 1e-14);
        }
        assert!((d.outage() - (-(-2.0 * tab.threshold(1) / rho).exp_m1())).abs() < 1e-14);
    }

    #[test]
    fn exact_matches_simulation() {
        let tab = table();
        let n = 5;
        let rho = db_to_linear(20.0);
        let cfg = NetworkConfig {
            num_relays: n,
            rho,
            ser_target: 1e-4,
            block_bits: 1000,
            levels: 4,
        };
        let trials = 200_000u64;
        let mut counts = vec![0u64; n * 4];
        let mut outages = 0;
        for trial in 0..trials {
            let r = draw_channels(&cfg, &mut substream(9, 0, trial, StreamKind::Channel));
            let (g1, g2) = hop_snrs(&cfg, &r);
            let o = select_joint(&g1, &g2, &tab);
            match o.ms {
                Some(ms) => counts[(o.relays.len() - 1) * 4 + ms.level() as usize - 1] += 1,
                None => outages += 1,
            }
        }
        let mc = SelectionDistribution::from_counts(n, 4, &counts, outages);
        let exact = selection_distribution_exact(n, &tab, rho);
        for (a, k, p) in exact.iter() {
            let se = (p * (1.0 - p) / trials as f64)
                .sqrt()
                .max(1.0 / trials as f64);
            assert!(
                (mc.get(a, k) - p).abs() < 4.5 * se,
                "({a},{k}): mc {} exact {p}",
                mc.get(a, k)
            );
        }
        assert!(exact.tv_distance(&mc) < 0.01);
    }

    #[test]
    fn closed_matches_quadrature() {
        let tab = table();
        let n = 5;
        let rho = db_to_linear(20.0);
        for a in 1..=n {
            for k in 1..=4 {
                let closed = pr_selection_closed(a, k, n, &tab, rho);
                let numeric = pr_selection_numeric(a, k, n, &tab, rho).unwrap();
                assert!(
                    (closed - numeric).abs() < 1e-6,
                    "({a},{k}): {closed} vs {numeric}"
                );
            }
        }
    }

    #[test]
    fn closed_matches_event_frequencies() {
        // The event is U_A ∈ [Γ_k, Γ_{k+1}), V_A < Γ_k with relays ranked by γ1.
        let tab = table();
        let n = 4;
        let rho = db_to_linear(18.0);
        let cfg = NetworkConfig {
            num_relays: n,
            rho,
            ser_target: 1e-4,
            block_bits: 1000,
            levels: 4,
        };
        let trials = 200_000u64;
        let mut hits = vec![0u64; n * 4];
        for trial in 0..trials {
            let r = draw_channels(&cfg, &mut substream(21, 0, trial, StreamKind::Channel));
            let (mut g1, g2) = hop_snrs(&cfg, &r);
            g1.sort_by(|x, y| y.total_cmp(x));
            for a in 1..=n {
                let z: f64 = g2[..a].iter().sum();
                let u = z.min(g1[a - 1]);
                let v = if a < n { g1[a] } else { 0.0 };
                for k in 1..=4u32 {
                    if u >= tab.threshold(k) && u < tab.threshold(k + 1) && v < tab.threshold(k) {
                        hits[(a - 1) * 4 + k as usize - 1] += 1;
                    }
                }
            }
        }
        for a in 1..=n {
            for k in 1..=4u32 {
                let p = pr_selection_closed(a, k, n, &tab, rho);
                let f = hits[(a - 1) * 4 + k as usize - 1] as f64 / trials as f64;
                let se = (p * (1.0 - p) / trials as f64)
                    .sqrt()
                    .max(1.0 / trials as f64);
                assert!((f - p).abs() < 4.5 * se, "({a},{k}): {f} vs {p}");
            }
        }
    }

    #[test]
    fn events_overlap() {
        let tab = table();
        let events = event_distribution_closed(5, &tab, db_to_linear(25.0));
        assert!(events.total() > 1.5);
    }

    #[test]
    fn uncorrected_series_disagrees_with_quadrature() {
        let tab = table();
        let rho = db_to_linear(20.0);
        let uncorrected = event_distribution_uncorrected(5, &tab, rho);
        let closed = event_distribution_closed(5, &tab, rho);
        assert!(uncorrected.selected_mass() > 10.0 * closed.selected_mass());
        // With the binomial restored and the sum stopped at N-A the series
        // becomes the closed form.
        for a in 1..5 {
            for k in 1..=4 {
                let (lo, _) = scaled(&tab, rho, k);
                let uncorrected_prefactor: f64 = (0..=(5 - a) as u32)
                    .map(|i| {
                        (-1f64).powi(i as i32) * (-lo * f64::from(i)).exp() / ln_factorial(i).exp()
                    })
                    .sum::<f64>()
                    * (ln_factorial(5) - ln_factorial(a as u32) - ln_factorial((4 - a) as u32))
                        .exp();
                let p = pr_selection_uncorrected(a, k, 5, &tab, rho);
                let series_part = p / uncorrected_prefactor;
                let closed_part = pr_selection_closed(a, k, 5, &tab, rho)
                    / (binomial(5, a as u32) * (-(-lo).exp_m1()).powi((5 - a) as i32));
                assert!((series_part - closed_part).abs() <= 1e-12 * closed_part.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn high_snr_collapses_to_all_relays_top_level() {
        let tab = table();
        let rho = 1e12;
        let d = selection_distribution_exact(5, &tab, rho);
        assert!((d.get(5, 4) - 1.0).abs() < 1e-6, "{d:?}");
        assert!((pr_selection_closed(5, 4, 5, &tab, rho) - 1.0).abs() < 1e-6);
        assert!((pr_selection_uncorrected(5, 4, 5, &tab, rho) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn counts_round_trip() {
        let d = SelectionDistribution::from_counts(2, 2, &[1, 2, 3, 0], 4);
        assert!((d.get(1, 2) - 0.2).abs() < 1e-15);
        assert!((d.outage() - 0.4).abs() < 1e-15);
        assert!((d.total() - 1.0).abs() < 1e-15);
        assert_eq!(d.tv_distance(&d), 0.0);
    }
}
