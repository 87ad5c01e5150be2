//! Confidence intervals and sample-size bounds.

use serde::Serialize;

use crate::error::{invalid, Result};

/// Two-sided standard normal quantile for 99% coverage.
pub const Z_99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.low <= other.high && other.low <= self.high
    }
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> Interval {
    if trials == 0 {
        return Interval { low: 0.0, high: 1.0 };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Interval { low: (centre - half).max(0.0), high: (centre + half).min(1.0) }
}

pub fn wilson_99(successes: usize, trials: usize) -> Interval {
    wilson_interval(successes, trials, Z_99)
}

/// Smallest `M` with `2 exp(−2Mε²/c²) ≤ δ`, i.e. `⌈c² ln(2/δ) / (2ε²)⌉`.
pub fn hoeffding_budget(delta: f64, c: f64, eps: f64) -> Result<usize> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("failure probability must lie in (0, 1), got {delta}")));
    }
    if !(eps > 0.0 && c > 0.0) {
        return Err(invalid("accuracy and range must be positive"));
    }
    let m = c * c * (2.0 / delta).ln() / (2.0 * eps * eps);
    // Guards exact integers such as the saturated case against rounding upward.
    Ok((m - 1e-9).ceil().max(1.0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hoeffding_examples() {
        assert_eq!(hoeffding_budget(2.0 * (-2.0f64).exp(), 1.0, 1.0).unwrap(), 1);
        assert_eq!(hoeffding_budget(0.01, 1.0, 0.1).unwrap(), 265);
        let per_coordinate = hoeffding_budget(0.01 / 8.0, 1.0, 0.1).unwrap();
        assert_eq!(per_coordinate, ((1600f64).ln() / 0.02).ceil() as usize);
        assert!(hoeffding_budget(0.0, 1.0, 0.1).is_err());
        assert!(hoeffding_budget(0.1, 1.0, 0.0).is_err());
    }

    #[test]
    fn wilson_contains_estimate_and_shrinks() {
        let a = wilson_99(50, 100);
        let b = wilson_99(5000, 10_000);
        assert!(a.contains(0.5) && b.contains(0.5));
        assert!(b.high - b.low < a.high - a.low);
        let edge = wilson_99(100, 100);
        assert!(edge.high == 1.0 && edge.low > 0.9);
        assert!(!wilson_99(0, 100).contains(0.1));
    }
}
