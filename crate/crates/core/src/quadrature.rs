//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite and
//! semi-infinite intervals, plus iterated 2D integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

// Kronrod nodes (non-negative half) and weights; odd positions are the
// embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and limits for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_intervals: 2000,
        }
    }
}

impl QuadOptions {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol: 0.0,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: &QuadOptions) -> Result<Estimate> {
    let (value, error) = kronrod(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.abs());
        if total_err <= tol {
            return Ok(Estimate {
                value: total,
                error: total_err,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature {
                value: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at machine precision; accept what we have.
            return Ok(Estimate {
                value: total,
                error: total_err,
            });
        }
        let (lv, le) = kronrod(f, worst.a, mid);
        let (rv, re) = kronrod(f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
    }
}

/// `∫_a^b f(x) dx` for finite `a` and finite or `+inf` `b`.
///
/// A semi-infinite range is mapped onto `[0, 1)` with `x = a + t/(1-t)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Estimate> {
    assert!(a.is_finite(), "lower limit must be finite");
    if b == a {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    if b < a {
        return integrate(f, b, a, opts).map(|e| Estimate {
            value: -e.value,
            error: e.error,
        });
    }
    if b.is_infinite() {
        let g = |t: f64| {
            let s = 1.0 - t;
            let x = a + t / s;
            let fx = f(x);
            if fx == 0.0 {
                0.0
            } else {
                fx / (s * s)
            }
        };
        return adapt(&g, 0.0, 1.0, opts);
    }
    adapt(&f, a, b, opts)
}

/// Iterated integral `∫_a^b ∫_{c(x)}^{d(x)} f(x, y) dy dx`.
///
/// The inner integral runs with a tighter absolute tolerance so that its
/// error does not dominate the outer estimate.
pub fn integrate_2d<F, L>(f: F, a: f64, b: f64, inner: L, opts: &QuadOptions) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> (f64, f64),
{
    let inner_opts = QuadOptions {
        abs_tol: opts.abs_tol * 1e-2,
        rel_tol: opts.rel_tol * 1e-2,
        max_intervals: opts.max_intervals,
    };
    let failure = std::cell::Cell::new(None);
    let outer = |x: f64| {
        let (c, d) = inner(x);
        if d <= c {
            return 0.0;
        }
        match integrate(|y| f(x, y), c, d, &inner_opts) {
            Ok(e) => e.value,
            Err(err) => {
                failure.set(Some(err));
                f64::NAN
            }
        }
    };
    let result = integrate(outer, a, b, opts);
    if let Some(err) = failure.take() {
        return Err(err);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let e = integrate(
            |x| 3.0 * x * x - x + 2.0,
            -1.0,
            2.0,
            &QuadOptions::default(),
        )
        .unwrap();
        assert!((e.value - (9.0 - 1.5 + 6.0)).abs() < 1e-13);
    }

    #[test]
    fn exponential_tail() {
        let e = integrate(|x| (-x).exp(), 0.0, f64::INFINITY, &QuadOptions::default()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-10);
        let e = integrate(
            |x| x * (-x / 7.0).exp() / 49.0,
            3.0,
            f64::INFINITY,
            &QuadOptions::default(),
        )
        .unwrap();
        let expect = (1.0 + 3.0 / 7.0) * (-3.0f64 / 7.0).exp();
        assert!((e.value - expect).abs() < 1e-10);
    }

    #[test]
    fn reversed_and_empty_limits() {
        let o = QuadOptions::default();
        assert_eq!(integrate(|x| x, 1.0, 1.0, &o).unwrap().value, 0.0);
        assert!((integrate(|x| x, 1.0, 0.0, &o).unwrap().value + 0.5).abs() < 1e-14);
    }

    #[test]
    fn kink_resolved_adaptively() {
        let e = integrate(
            |x: f64| (x - 0.3).abs().sqrt(),
            0.0,
            1.0,
            &QuadOptions::with_abs_tol(1e-10),
        )
        .unwrap();
        let expect = (2.0 / 3.0) * (0.3f64.powf(1.5) + 0.7f64.powf(1.5));
        assert!((e.value - expect).abs() < 1e-9);
    }

    #[test]
    fn triangle_domain() {
        // ∫_0^1 ∫_0^x x y dy dx = 1/8
        let e = integrate_2d(
            |x, y| x * y,
            0.0,
            1.0,
            |x| (0.0, x),
            &QuadOptions::default(),
        )
        .unwrap();
        assert!((e.value - 0.125).abs() < 1e-12);
        // Product of exponentials over the quadrant.
        let e = integrate_2d(
            |x, y| (-x - 2.0 * y).exp() * 2.0,
            0.0,
            f64::INFINITY,
            |_| (0.0, f64::INFINITY),
            &QuadOptions::with_abs_tol(1e-9),
        )
        .unwrap();
        assert!((e.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn divergence_reported() {
        let opts = QuadOptions {
            max_intervals: 50,
            ..QuadOptions::with_abs_tol(1e-14)
        };
        assert!(integrate(|x| 1.0 / x, 0.0, 1.0, &opts).is_err());
    }
}
