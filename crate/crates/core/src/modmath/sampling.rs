use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Symmetric error distribution `χ` over `Z_q`, centered at 0 with support in
/// `[−η, η]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorDistribution {
    /// Uniform over the `2η + 1` integers in `[−η, η]`.
    BoundedUniform { eta: u64 },
    /// Continuous Gaussian of standard deviation `sigma`, rounded to the nearest
    /// integer and conditioned on `|e| ≤ η` by rejection.
    RoundedGaussian { eta: u64, sigma: f64 },
}

impl ErrorDistribution {
    pub fn bounded_uniform(eta: u64) -> Self {
        Self::BoundedUniform { eta }
    }

    /// Rounded Gaussian with the default width `σ = η/2`.
    pub fn rounded_gaussian(eta: u64) -> Self {
        Self::RoundedGaussian { eta, sigma: eta as f64 / 2.0 }
    }

    pub fn eta(&self) -> u64 {
        match *self {
            Self::BoundedUniform { eta } | Self::RoundedGaussian { eta, .. } => eta,
        }
    }

    pub fn validate(&self, q: u64) -> Result<()> {
        if 2 * self.eta() >= q {
            return Err(invalid(format!("error bound η={} must satisfy 2η < q={q}", self.eta())));
        }
        if let Self::RoundedGaussian { sigma, .. } = *self {
            if !(sigma >= 0.0 && sigma.is_finite()) {
                return Err(invalid(format!("Gaussian width must be finite and ≥ 0, got {sigma}")));
            }
        }
        Ok(())
    }

    /// Signed sample in `[−η, η]`.
    pub fn sample_signed<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        match *self {
            Self::BoundedUniform { eta } => {
                let eta = eta as i64;
                rng.gen_range(-eta..=eta)
            }
            Self::RoundedGaussian { eta, sigma } => {
                if eta == 0 || sigma == 0.0 {
                    return 0;
                }
                let normal = Normal::new(0.0, sigma).expect("validated sigma");
                loop {
                    let e = normal.sample(rng).round();
                    if e.abs() <= eta as f64 {
                        return e as i64;
                    }
                }
            }
        }
    }

    /// Exact probability mass of the signed value `e`.
    pub fn pmf(&self, e: i64) -> f64 {
        let eta = self.eta() as i64;
        if e.abs() > eta {
            return 0.0;
        }
        match *self {
            Self::BoundedUniform { .. } => 1.0 / (2 * eta + 1) as f64,
            Self::RoundedGaussian { sigma, .. } => {
                if eta == 0 || sigma == 0.0 {
                    return if e == 0 { 1.0 } else { 0.0 };
                }
                let cell = |k: i64| {
                    let lo = (k as f64 - 0.5) / sigma;
                    let hi = (k as f64 + 0.5) / sigma;
                    std_normal_cdf(hi) - std_normal_cdf(lo)
                };
                let total: f64 = (-eta..=eta).map(cell).sum();
                cell(e) / total
            }
        }
    }
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

// Numerical Recipes erfc (Chebyshev fit, relative error < 1.2e-7); only used for
// reporting pmf values, never for sampling.
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let r = t * (-z * z - 1.265_512_23
        + t * (1.000_023_68
            + t * (0.374_091_96
                + t * (0.096_784_18
                    + t * (-0.186_288_06
                        + t * (0.278_868_07
                            + t * (-1.135_203_98 + t * (1.488_515_87 + t * (-0.822_152_23 + t * 0.170_872_77)))))))))
        .exp();
    if x >= 0.0 {
        r
    } else {
        2.0 - r
    }
}

/// Error sample reduced into `Z_q`.
pub fn sample_error<R: Rng + ?Sized>(chi: &ErrorDistribution, q: u64, rng: &mut R) -> u64 {
    chi.sample_signed(rng).rem_euclid(q as i64) as u64
}
