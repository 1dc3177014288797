//! Densities of the order statistics behind the selection probabilities.
//!
//! Every SNR is exponential with mean `rho`. `Z` is the sum of `A` second-hop
//! SNRs (Erlang), `γ_[A]` the `A`-th largest of `N` first-hop SNRs,
//! `U_A = min(Z, γ_[A])` and `V_A = γ_[A+1]`.

use crate::special::{ln_factorial, poisson_cdf, poisson_tail_above};

fn check(a: u32, rho: f64) {
    assert!(a >= 1, "A must be at least 1");
    assert!(rho > 0.0, "rho must be positive");
}

fn check_order(a: u32, n: u32, rho: f64) {
    check(a, rho);
    assert!(a < n, "order statistics need 1 <= A < N");
}

/// `1 - e^{-x}` without cancellation near zero.
fn one_minus_exp(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// Density of the sum of `a` i.i.d. exponentials with mean `rho`.
pub fn sum_exp_pdf(z: f64, a: u32, rho: f64) -> f64 {
    check(a, rho);
    if z < 0.0 {
        return 0.0;
    }
    if z == 0.0 {
        return if a == 1 { 1.0 / rho } else { 0.0 };
    }
    let x = z / rho;
    (f64::from(a - 1) * x.ln() - x - ln_factorial(a - 1)).exp() / rho
}

/// Distribution function of the same sum: `1 - sum_{i<a} x^i e^{-x} / i!`.
pub fn sum_exp_cdf(z: f64, a: u32, rho: f64) -> f64 {
    check(a, rho);
    if z <= 0.0 {
        return 0.0;
    }
    poisson_tail_above(a - 1, z / rho)
}

fn sum_exp_survival(z: f64, a: u32, rho: f64) -> f64 {
    if z <= 0.0 {
        return 1.0;
    }
    poisson_cdf(a - 1, z / rho)
}

/// `N! / ((N-A-1)! (A-1)!)`
fn joint_coefficient(a: u32, n: u32) -> f64 {
    (ln_factorial(n) - ln_factorial(n - a - 1) - ln_factorial(a - 1)).exp()
}

/// `N! / ((N-A-1)! A!)`
fn marginal_coefficient(a: u32, n: u32) -> f64 {
    (ln_factorial(n) - ln_factorial(n - a - 1) - ln_factorial(a)).exp()
}

/// Joint density of `(γ_[A], γ_[A+1])` at `(x, y)`, supported on `0 < y < x`.
pub fn order_stat_joint_pdf(x: f64, y: f64, a: u32, n: u32, rho: f64) -> f64 {
    check_order(a, n, rho);
    if !(y > 0.0 && y < x) {
        return 0.0;
    }
    joint_coefficient(a, n) / (rho * rho)
        * (-y / rho).exp()
        * (-f64::from(a) * x / rho).exp()
        * one_minus_exp(y / rho).powi((n - a - 1) as i32)
}

/// Density of `γ_[A+1]` at `y > 0`.
pub fn order_stat_pdf(y: f64, a: u32, n: u32, rho: f64) -> f64 {
    check_order(a, n, rho);
    if y <= 0.0 {
        return 0.0;
    }
    marginal_coefficient(a, n) / rho
        * (-f64::from(a + 1) * y / rho).exp()
        * one_minus_exp(y / rho).powi((n - a - 1) as i32)
}

/// `(ψ(x, y), ψ_[A+1](y))`: the joint density of `(γ_[A], γ_[A+1])` and the
/// marginal of `γ_[A+1]`.
pub fn order_stat_pdfs(x: f64, y: f64, a: u32, n: u32, rho: f64) -> (f64, f64) {
    (
        order_stat_joint_pdf(x, y, a, n, rho),
        order_stat_pdf(y, a, n, rho),
    )
}

/// `∂/∂v P(γ_[A] < u, γ_[A+1] < v)` for `0 < v < u`.
///
/// Only `x` in `(v, u)` contributes, which gives the factor
/// `e^{-Av/ρ} - e^{-Au/ρ}`.
pub fn order_stat_joint_cdf_dv(u: f64, v: f64, a: u32, n: u32, rho: f64) -> f64 {
    check_order(a, n, rho);
    if !(v > 0.0 && v < u) {
        return 0.0;
    }
    let af = f64::from(a);
    marginal_coefficient(a, n) / rho
        * (-v / rho).exp()
        * one_minus_exp(v / rho).powi((n - a - 1) as i32)
        * ((-af * v / rho).exp() - (-af * u / rho).exp())
}

/// The same derivative with the factor `1 - e^{-Au/ρ}`, i.e. integrating
/// `x` over `(0, u)`, which overcounts. Feeds [`joint_pdf_uv_uncorrected`].
pub fn order_stat_joint_cdf_dv_uncorrected(u: f64, v: f64, a: u32, n: u32, rho: f64) -> f64 {
    check_order(a, n, rho);
    if !(v > 0.0 && v < u) {
        return 0.0;
    }
    marginal_coefficient(a, n) / rho
        * (-v / rho).exp()
        * one_minus_exp(v / rho).powi((n - a - 1) as i32)
        * one_minus_exp(f64::from(a) * u / rho)
}

/// Joint density of `(U_A, V_A)`, `1 <= A < N`.
///
/// For `0 < u < v` it is `g(u) ψ_[A+1](v)`. For `0 < v < u` it is
/// `(1 - G(u)) ψ(u, v) + g(u) (ψ_[A+1](v) - ∂Ψ(u,v)/∂v)`, which collapses to
///
/// ```text
/// N! / (ρ² (N-A-1)! (A-1)!) e^{-v/ρ} (1 - e^{-v/ρ})^{N-A-1}
///     · e^{-(A+1)u/ρ} (Σ_{j<A} (u/ρ)^j / j! + (u/ρ)^{A-1} / A!)
/// ```
pub fn joint_pdf_uv(u: f64, v: f64, a: u32, n: u32, rho: f64) -> f64 {
    check_order(a, n, rho);
    if !(u > 0.0 && v > 0.0) || u == v {
        return 0.0;
    }
    if u < v {
        return sum_exp_pdf(u, a, rho) * order_stat_pdf(v, a, n, rho);
    }
    let x = u / rho;
    let af = f64::from(a);
    // e^{-(A+1)x} Σ_{j<A} x^j/j! and e^{-(A+1)x} x^{A-1}/A!, kept in log space.
    let head = (-af * x).exp() * poisson_cdf(a - 1, x);
    let tail = (f64::from(a - 1) * x.ln() - (af + 1.0) * x - ln_factorial(a)).exp();
    joint_coefficient(a, n) / (rho * rho)
        * (-v / rho).exp()
        * one_minus_exp(v / rho).powi((n - a - 1) as i32)
        * (head + tail)
}

/// The closed form assembled with
/// [`order_stat_joint_cdf_dv_uncorrected`]. It is not a density: it turns
/// negative for large `u` and does not integrate to one.
pub fn joint_pdf_uv_uncorrected(u: f64, v: f64, a: u32, n: u32, rho: f64) -> f64 {
    check_order(a, n, rho);
    if !(u > 0.0 && v > 0.0) || u == v {
        return 0.0;
    }
    let af = f64::from(a);
    let x = u / rho;
    let common = one_minus_exp(v / rho).powi((n - a - 1) as i32);
    let a_fact = ln_factorial(a).exp();
    if v < u {
        joint_coefficient(a, n) / (rho * rho)
            * (-(u + v) / rho).exp()
            * common
            * ((-(af - 1.0) * x).exp() * poisson_cdf(a - 1, x)
                + x.powi(a as i32 - 1) / a_fact * ((-af * x).exp() + (-af * v / rho).exp() - 1.0))
    } else {
        ln_factorial(n).exp() * u.powi(a as i32 - 1)
            / (rho.powi(a as i32 + 1)
                * ln_factorial(n - a - 1).exp()
                * ln_factorial(a - 1).exp()
                * a_fact)
            * (-u / rho).exp()
            * (-(af + 1.0) * v / rho).exp()
            * common
    }
}

/// Density of `U_N = min(Z_N, γ_[N])`, the statistic that decides the
/// all-relays outcome (no `(N+1)`-th relay exists).
pub fn all_relays_min_pdf(u: f64, n: u32, rho: f64) -> f64 {
    check(n, rho);
    if u <= 0.0 {
        return 0.0;
    }
    let nf = f64::from(n);
    let weakest_survival = (-nf * u / rho).exp();
    sum_exp_pdf(u, n, rho) * weakest_survival
        + nf / rho * weakest_survival * sum_exp_survival(u, n, rho)
}
