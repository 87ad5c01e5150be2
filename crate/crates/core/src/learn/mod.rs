//! Quantum learning algorithms over membership and example oracles.
//!
//! Every learner samples one outcome from a seeded stream and, where the state
//! is small enough to hold, also reports the exact success probability computed
//! from the full output distribution.

pub mod amplify;
pub mod fourier;
pub mod kickback;
pub mod parity;

use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::oracles::OracleSpec;

pub use amplify::{amplify, amplify_budget, verify_by_samples, Amplified};
pub use fourier::{
    ebv_postprocess, ebv_success_probability, ebv_support_mass, extended_bv, extended_bv_lwe, extended_bv_lwe_capped, extended_bv_lwe_fixed,
    interference_success_probability,
    lwe_lower_bound, LweLearnResult,
};
pub use kickback::{bernstein_vazirani, bernstein_vazirani_distribution, deutsch_jozsa, DjReport, DjVerdict};
pub use parity::{parity_post_state, quantum_parity_learn, quantum_parity_learn_with, ReadoutRule};

/// Hidden string `s ∈ Z_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecretSpec {
    pub q: usize,
    pub s: Vec<usize>,
}

impl SecretSpec {
    pub fn new(q: usize, s: Vec<usize>) -> Result<Self> {
        if q < 2 {
            return Err(invalid(format!("modulus must be ≥ 2, got {q}")));
        }
        if s.is_empty() {
            return Err(invalid("secret must have at least one entry"));
        }
        if let Some(bad) = s.iter().find(|&&x| x >= q) {
            return Err(invalid(format!("secret entry {bad} not in Z_{q}")));
        }
        Ok(Self { q, s })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, q: usize, rng: &mut R) -> Result<Self> {
        Self::new(q, (0..n).map(|_| rng.gen_range(0..q.max(1))).collect())
    }

    /// Uniform over nonzero secrets.
    pub fn random_nonzero<R: Rng + ?Sized>(n: usize, q: usize, rng: &mut R) -> Result<Self> {
        loop {
            let s = Self::random(n, q, rng)?;
            if !s.is_zero() {
                return Ok(s);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().all(|&x| x == 0)
    }

    /// `f_s(x) = ⟨s, x⟩ mod q`.
    pub fn oracle(&self) -> Result<OracleSpec> {
        OracleSpec::inner_product(self.q, &self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearnResult {
    /// `None` when the learner gives up (⊥).
    pub hypothesis: Option<Vec<usize>>,
    pub success: bool,
    pub exact_success_prob: Option<f64>,
    pub queries_used: usize,
    /// Set when the instance sits outside the learner's guarantee, such as the
    /// all-zero secret for the parity learner.
    pub degenerate: bool,
}

impl LearnResult {
    fn judge(secret: &SecretSpec, hypothesis: Option<Vec<usize>>, exact: Option<f64>, queries: usize) -> Self {
        let success = hypothesis.as_deref() == Some(secret.s.as_slice());
        Self { hypothesis, success, exact_success_prob: exact, queries_used: queries, degenerate: false }
    }
}

/// Marginal distribution of the lowest `digits` digits.
pub fn low_marginal(dist: &[f64], q: usize, digits: usize) -> Vec<f64> {
    let size = q.pow(digits as u32);
    let mut out = vec![0.0; size];
    for (i, p) in dist.iter().enumerate() {
        out[i % size] += p;
    }
    out
}

/// Draws an index from a probability vector.
pub(crate) fn sample_index<R: Rng + ?Sized>(dist: &[f64], rng: &mut R) -> usize {
    let mut u = rng.gen::<f64>() * dist.iter().sum::<f64>();
    for (i, p) in dist.iter().enumerate() {
        if u < *p {
            return i;
        }
        u -= p;
    }
    dist.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}
