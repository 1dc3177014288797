//! Scalar special functions shared by the modulation and analytics code.

use std::f64::consts::SQRT_2;

/// Gaussian tail probability `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// `ln(n!)`.
pub fn ln_factorial(n: u32) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 170 {
        (2..=n).map(f64::from).map(f64::ln).sum()
    } else {
        libm::lgamma(f64::from(n) + 1.0)
    }
}

/// Binomial coefficient as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k))
        .exp()
        .round()
}

/// `P(Pois(x) <= n)`, i.e. `e^{-x} sum_{j=0}^{n} x^j / j!`.
///
/// For `x = +inf` this is 0, matching the limit the analytics rely on.
pub fn poisson_cdf(n: u32, x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    if x <= 0.0 {
        return 1.0;
    }
    if x > f64::from(n) + 1.0 {
        // Left tail: summed directly, no cancellation.
        poisson_left_sum(n, x)
    } else {
        1.0 - poisson_tail_above(n, x)
    }
}

/// `P(Pois(x) > n)`, accurate when it is small.
pub fn poisson_tail_above(n: u32, x: f64) -> f64 {
    if x.is_infinite() {
        return 1.0;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x > f64::from(n) + 1.0 {
        return 1.0 - poisson_left_sum(n, x);
    }
    let mut j = n + 1;
    let mut term = (f64::from(j) * x.ln() - x - ln_factorial(j)).exp();
    let mut sum = 0.0;
    while term > sum * 1e-17 && j < n + 10_000 {
        sum += term;
        j += 1;
        term *= x / f64::from(j);
    }
    sum
}

fn poisson_left_sum(n: u32, x: f64) -> f64 {
    let mut term = (-x).exp();
    let mut sum = term;
    for j in 1..=n {
        term *= x / f64::from(j);
        sum += term;
    }
    sum
}

/// Poisson probability mass `P(Pois(x) = j)`.
pub fn poisson_pmf(j: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    (f64::from(j) * x.ln() - x - ln_factorial(j)).exp()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_function_reference_points() {
        assert!((q_function(0.0) - 0.5).abs() < 1e-16);
        // Q(1), Q(3), Q(6) from tables.
        assert!((q_function(1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!((q_function(3.0) - 1.349_898_031_630_094_6e-3).abs() < 1e-17);
        assert!((q_function(6.0) / 9.865_876_450_376_98e-10 - 1.0).abs() < 1e-12);
        assert!((q_function(-1.0) + q_function(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn poisson_cdf_matches_direct_sum() {
        for &x in &[1e-6, 0.1, 0.9, 2.5, 7.0, 40.0] {
            for n in 0..12 {
                let direct: f64 = (0..=n).map(|j| poisson_pmf(j, x)).sum();
                let got = poisson_cdf(n, x);
                assert!((got - direct).abs() < 1e-14, "n={n} x={x}");
                assert!((got + poisson_tail_above(n, x) - 1.0).abs() < 1e-14);
            }
        }
        assert_eq!(poisson_cdf(3, f64::INFINITY), 0.0);
        // Tail far below the double epsilon of 1 - cdf.
        let tail = poisson_tail_above(4, 1e-4);
        let expect = poisson_pmf(5, 1e-4);
        assert!((tail / expect - 1.0).abs() < 1e-4);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(20, 10), 184_756.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
