//! Key recovery against the LWE scheme from decryption queries alone.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ind::{Adversary, Oracles};
use super::stats::hoeffding_budget;
use crate::error::{invalid, Result};
use crate::rng::TrialRng;
use crate::schemes::{LweCipher, LweKey, LweSkes, Scheme};

/// How each key coordinate is estimated from the samples `X = c − b⌊q/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyEstimator {
    /// Candidate whose decision rule reproduces the most answers; ties go to
    /// the candidate closest to the circular mean. Falls back to the circular
    /// mean alone for `q > 4096`.
    #[default]
    Consistency,
    /// Argument of `Σ exp(2πi X / q)` minus the band offset, rounded.
    CircularMean,
    /// Arithmetic mean of the samples in `[0, q)`, rounded.
    PlainMean,
}

const CONSISTENCY_LIMIT: u64 = 4096;

fn circular_distance(a: u64, b: u64, q: u64) -> u64 {
    let d = (a + q - b) % q;
    d.min(q - d)
}

fn circular_mean(xs: &[u64], q: u64) -> f64 {
    let tau = std::f64::consts::TAU;
    let (s, c) = xs.iter().fold((0.0, 0.0), |(s, c), &x| {
        let t = tau * x as f64 / q as f64;
        (s + t.sin(), c + t.cos())
    });
    (s.atan2(c) / tau * q as f64).rem_euclid(q as f64)
}

/// `E[X] − k` for uniform `c`: the two decision bands differ in size when `q`
/// is odd, which shifts the sample mean off the key.
pub fn band_offset(q: u64) -> f64 {
    let (half, quarter) = (q / 2, q / 4);
    let total: i64 = (0..q)
        .map(|c| {
            let b = u64::from(circular_distance(c, 0, q) > quarter);
            let x = ((c + q - b * half) % q) as i64;
            if x > (q / 2) as i64 { x - q as i64 } else { x }
        })
        .sum();
    total as f64 / q as f64
}

fn round_mod(x: f64, q: u64) -> u64 {
    (x.round() as i64).rem_euclid(q as i64) as u64
}

/// Per-coordinate estimate from queries `(c, b)`.
pub fn estimate_coordinate(queries: &[(u64, u8)], q: u64, estimator: KeyEstimator) -> u64 {
    let xs: Vec<u64> = queries.iter().map(|&(c, b)| (c + q - u64::from(b) * (q / 2)) % q).collect();
    match estimator {
        KeyEstimator::PlainMean => {
            let mean = xs.iter().sum::<u64>() as f64 / xs.len().max(1) as f64;
            round_mod(mean, q)
        }
        KeyEstimator::CircularMean => round_mod(circular_mean(&xs, q) - band_offset(q), q),
        KeyEstimator::Consistency if q > CONSISTENCY_LIMIT => round_mod(circular_mean(&xs, q) - band_offset(q), q),
        KeyEstimator::Consistency => {
            let mut hist = vec![[0usize; 2]; q as usize];
            for &(c, b) in queries {
                hist[(c % q) as usize][usize::from(b)] += 1;
            }
            let centre = round_mod(circular_mean(&xs, q) - band_offset(q), q);
            let quarter = q / 4;
            (0..q)
                .map(|k| {
                    let agree: usize = hist
                        .iter()
                        .enumerate()
                        .map(|(c, h)| h[usize::from(circular_distance(c as u64, k, q) > quarter)])
                        .sum();
                    (agree, std::cmp::Reverse(circular_distance(k, centre, q)), std::cmp::Reverse(k))
                })
                .max()
                .map(|(_, _, std::cmp::Reverse(k))| k)
                .unwrap_or(0)
        }
    }
}

/// Queries `Dec(e_i, c)` for `m` uniform `c` per coordinate and estimates each
/// `k_i`.
pub fn key_recovery_attack<D, R>(
    mut dec: D,
    n: usize,
    q: u64,
    m: usize,
    estimator: KeyEstimator,
    rng: &mut R,
) -> Result<Vec<u64>>
where
    D: FnMut(&LweCipher) -> Result<u8>,
    R: Rng + ?Sized,
{
    if m == 0 {
        return Err(invalid("key recovery needs at least one query per coordinate"));
    }
    let mut key = Vec::with_capacity(n);
    for i in 0..n {
        let mut a = vec![0; n];
        a[i] = 1;
        let mut queries = Vec::with_capacity(m);
        for _ in 0..m {
            let c = rng.gen_range(0..q);
            let b = dec(&LweCipher { a: a.clone(), c })?;
            queries.push((c, b));
        }
        key.push(estimate_coordinate(&queries, q, estimator));
    }
    Ok(key)
}

/// Per-coordinate query budget with a union bound over the `n` coordinates:
/// Hoeffding with failure `δ/n`, sample range `⌊q/2⌋ + 1`, accuracy ½.
pub fn key_recovery_budget(n: usize, q: u64, delta: f64) -> Result<usize> {
    hoeffding_budget(delta / n as f64, (q / 2 + 1) as f64, 0.5)
}

/// Recovers the key before the challenge, then decrypts the challenge with it.
/// Without a decryption oracle it falls back to a coin flip.
#[derive(Debug, Clone)]
pub struct KeyRecoveryAdversary {
    pub queries_per_coordinate: usize,
    pub estimator: KeyEstimator,
    key: Option<LweKey>,
}

impl KeyRecoveryAdversary {
    pub fn new(queries_per_coordinate: usize, estimator: KeyEstimator) -> Self {
        Self { queries_per_coordinate, estimator, key: None }
    }
}

impl Adversary<LweSkes> for KeyRecoveryAdversary {
    fn name(&self) -> String {
        format!("key-recovery(M={})", self.queries_per_coordinate)
    }

    fn choose(&mut self, o: &mut Oracles<'_, LweSkes>, rng: &mut TrialRng) -> Result<(u8, u8)> {
        if o.can_decrypt() {
            let (n, q) = (o.scheme().n(), o.scheme().q());
            let k = key_recovery_attack(|c| o.dec(c), n, q, self.queries_per_coordinate, self.estimator, rng)?;
            self.key = Some(LweKey(k));
        }
        Ok((0, 1))
    }

    fn guess(&mut self, challenge: &LweCipher, o: &mut Oracles<'_, LweSkes>, rng: &mut TrialRng) -> Result<u8> {
        match &self.key {
            Some(k) => o.scheme().dec(k, challenge),
            None => Ok(rng.gen_range(0..2)),
        }
    }
}
