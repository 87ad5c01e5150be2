//! Relabeling games: distinguish oracle access to `f` from access to `f*`,
//! which XORs a shift `s` into `f` on a hidden set of inputs.
//!
//! Inputs are `n`-bit integers with bit `j` on qubit `j`. The "last μ bits" of
//! `x` are its high bits `x >> (n − μ)`, and `f*(x) = f(x) ⊕ s` exactly when
//! those equal `r*`.

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{wilson_99, Interval};
use crate::error::{invalid, Result};
use crate::oracles::{membership_apply, OracleSpec};
use crate::qudit::{gates, UnitaryOp};
use crate::rng::{sub_rng, trial_rng};
use crate::State;

/// Largest `n` the exhaustive classical mode enumerates.
pub const EXHAUSTIVE_MAX_N: usize = 12;
/// Largest `n + m` the quantum mode simulates.
pub const QUANTUM_MAX_QUBITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum ClassicalMode {
    /// Exact win probability of the best deterministic distinct-query strategy,
    /// enumerated over every `(r*, s, b)`.
    Exhaustive,
    /// Monte-Carlo over random `(r*, s, b)` and random distinct queries.
    Sampled { trials: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalRelabelReport {
    pub n: usize,
    pub m: usize,
    pub t: usize,
    /// Set when the requested budget exceeded `2ⁿ` and was lowered to it.
    pub capped: bool,
    pub mode: ClassicalMode,
    pub win_prob: f64,
    /// `win_prob` as an exact fraction, exhaustive mode only.
    pub win_prob_exact: Option<String>,
    pub advantage: f64,
    /// `(T/2ⁿ)(½ − 2^{−m−1})`, the advantage of the optimal strategy.
    pub predicted_advantage: f64,
    pub bound: f64,
    pub ci99: Option<Interval>,
    pub pass: bool,
}

fn shifted(x: usize, n: usize, mu: usize, r_star: usize) -> bool {
    (x >> (n - mu)) == r_star
}

/// Exact optimal win probability `(T/2ⁿ)(1 − 2^{−m−1}) + (1 − T/2ⁿ)/2`.
pub fn classical_win_formula(n: usize, m: usize, t: usize) -> Ratio<i128> {
    let hit = Ratio::new(t as i128, 1i128 << n);
    let one = Ratio::from_integer(1);
    hit * (one - Ratio::new(1, 1i128 << (m + 1))) + (one - hit) / 2
}

/// The distinguisher queries `T` distinct inputs and answers 1 iff some answer
/// differs from `f`. Seeing no difference is at least as likely under `f` as
/// under `f*`, so this rule is Bayes-optimal for a fixed query set.
pub fn classical_relabeling(
    n: usize,
    m: usize,
    t: usize,
    f: &[usize],
    mode: ClassicalMode,
    seed: u64,
) -> Result<ClassicalRelabelReport> {
    if n == 0 || m == 0 || m > 32 {
        return Err(invalid("relabeling needs n ≥ 1 and 1 ≤ m ≤ 32"));
    }
    if f.len() != 1 << n {
        return Err(invalid(format!("f has {} entries, expected 2^{n}", f.len())));
    }
    let domain = 1usize << n;
    let capped = t > domain;
    let t = t.min(domain);
    let bound = t as f64 / domain as f64;
    let predicted = classical_win_formula(n, m, t) - Ratio::new(1, 2);
    let predicted_advantage = *predicted.numer() as f64 / *predicted.denom() as f64;
    let detects = |queries: &[usize], r_star: usize, s: usize, b: u8| {
        queries.iter().any(|&x| {
            let g = if b == 1 && shifted(x, n, n, r_star) { f[x] ^ s } else { f[x] };
            g != f[x]
        })
    };
    match mode {
        ClassicalMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N {
                return Err(invalid(format!("exhaustive mode needs n ≤ {EXHAUSTIVE_MAX_N}")));
            }
            let queries: Vec<usize> = (0..t).collect();
            let wins: u64 = (0..domain)
                .into_par_iter()
                .map(|r_star| {
                    let mut w = 0u64;
                    for s in 0..1usize << m {
                        for b in 0..2u8 {
                            w += u64::from(u8::from(detects(&queries, r_star, s, b)) == b);
                        }
                    }
                    w
                })
                .sum();
            let win = Ratio::new(wins as i128, 1i128 << (n + m + 1));
            let adv = win - Ratio::new(1, 2);
            let advantage = *adv.numer() as f64 / *adv.denom() as f64;
            Ok(ClassicalRelabelReport {
                n,
                m,
                t,
                capped,
                mode,
                win_prob: *win.numer() as f64 / *win.denom() as f64,
                win_prob_exact: Some(win.to_string()),
                advantage,
                predicted_advantage,
                bound,
                ci99: None,
                pass: adv <= Ratio::new(t as i128, domain as i128) && adv == predicted,
            })
        }
        ClassicalMode::Sampled { trials } => {
            if trials == 0 {
                return Err(invalid("sampled mode needs at least one trial"));
            }
            let wins = (0..trials as u64)
                .into_par_iter()
                .filter(|&i| {
                    let mut rng = trial_rng(seed, i);
                    let r_star = rng.gen_range(0..domain);
                    let s = rng.gen_range(0..1usize << m);
                    let b: u8 = rng.gen_range(0..2);
                    let queries = sample(&mut rng, domain, t).into_vec();
                    u8::from(detects(&queries, r_star, s, b)) == b
                })
                .count();
            let p = wins as f64 / trials as f64;
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            let advantage = p - 0.5;
            Ok(ClassicalRelabelReport {
                n,
                m,
                t,
                capped,
                mode,
                win_prob: p,
                win_prob_exact: None,
                advantage,
                predicted_advantage,
                bound,
                ci99: Some(wilson_99(wins, trials)),
                pass: advantage <= bound + 3.0 * sigma,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelabelConfig {
    /// Input bits.
    pub n: usize,
    /// Output bits.
    pub m: usize,
    /// Number of high input bits fixed to `r*`.
    pub mu: usize,
    /// Oracle queries made by the distinguishing circuit.
    pub t: usize,
    /// Queries to `f` used to prepare the advice state.
    pub advice_queries: usize,
}

impl RelabelConfig {
    pub fn new(n: usize, m: usize, mu: usize, t: usize) -> Result<Self> {
        let cfg = Self { n, m, mu, t, advice_queries: 1 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(invalid("relabeling needs n, m ≥ 1"));
        }
        if self.mu > self.n {
            return Err(invalid(format!("μ = {} exceeds n = {}", self.mu, self.n)));
        }
        if self.n + self.m > QUANTUM_MAX_QUBITS {
            return Err(crate::Error::CapExceeded {
                requested: 1u64 << (self.n + self.m),
                cap: 1u64 << QUANTUM_MAX_QUBITS,
            });
        }
        Ok(())
    }

    /// `2T / √(2^μ)`.
    pub fn bound(&self) -> f64 {
        2.0 * self.t as f64 / 2f64.powi(self.mu as i32).sqrt()
    }

    pub fn qubits(&self) -> usize {
        self.n + self.m
    }
}

/// `U_T O U_{T−1} … U_1 O U_0`, stored as `T + 1` gate layers.
#[derive(Debug, Clone)]
pub struct QueryCircuit {
    layers: Vec<Vec<UnitaryOp<f64>>>,
}

impl QueryCircuit {
    /// Each layer: an independent random rotation `Rz·Ry·Rz` on every qubit,
    /// then a CNOT ladder `0→1→…→(k−1)`.
    pub fn random<R: Rng + ?Sized>(qubits: usize, queries: usize, rng: &mut R) -> Result<Self> {
        let layers = (0..=queries)
            .map(|_| {
                let mut layer = (0..qubits)
                    .map(|j| UnitaryOp::single(j, gates::random_single_qubit(rng)))
                    .collect::<Result<Vec<_>>>()?;
                for j in 1..qubits {
                    layer.push(UnitaryOp::new(vec![j - 1, j], gates::cnot())?);
                }
                Ok(layer)
            })
            .collect::<Result<_>>()?;
        Ok(Self { layers })
    }

    /// Hadamards on the `n` input qubits, one query, nothing after.
    pub fn uniform_query(n: usize) -> Result<Self> {
        let first = (0..n).map(|j| UnitaryOp::single(j, gates::hadamard())).collect::<Result<_>>()?;
        Ok(Self { layers: vec![first, Vec::new()] })
    }

    pub fn queries(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn run(&self, mut state: State, oracle: &OracleSpec) -> Result<State> {
        for (i, layer) in self.layers.iter().enumerate() {
            if i > 0 {
                membership_apply(&mut state, oracle)?;
            }
            for op in layer {
                state.apply(op)?;
            }
        }
        Ok(state)
    }
}

/// `(f, f*)` as bit-valued oracles over `n` input and `m` output qubits.
pub fn relabeled_pair(cfg: &RelabelConfig, f: &[usize], r_star: usize, s: usize) -> Result<(OracleSpec, OracleSpec)> {
    let (n, mu) = (cfg.n, cfg.mu);
    let star: Vec<usize> = f
        .iter()
        .enumerate()
        .map(|(x, &y)| if shifted(x, n, mu, r_star) { y ^ s } else { y })
        .collect();
    Ok((OracleSpec::from_table(n, 2, cfg.m, f.to_vec())?, OracleSpec::from_table(n, 2, cfg.m, star)?))
}

/// Trace distance between the circuit outputs under `f` and under `f*`.
pub fn relabel_trace_distance(
    cfg: &RelabelConfig,
    f: &[usize],
    r_star: usize,
    s: usize,
    circuit: &QueryCircuit,
    advice: &State,
) -> Result<f64> {
    let (of, ostar) = relabeled_pair(cfg, f, r_star, s)?;
    let a = circuit.run(advice.clone(), &of)?;
    let b = circuit.run(advice.clone(), &ostar)?;
    a.trace_distance(&b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantumRelabelReport {
    pub config: RelabelConfig,
    pub draws: usize,
    pub mean: f64,
    pub max: f64,
    pub bound: f64,
    /// Draws whose distance exceeded three times the bound.
    pub flagged: Vec<u64>,
    /// `mean ≤ bound`.
    pub pass: bool,
    #[serde(skip)]
    pub distances: Vec<f64>,
}

/// One draw: random `f`, `r*`, `s`, distinguishing circuit and advice circuit,
/// all from trial stream `draw`.
pub fn quantum_relabel_draw(cfg: &RelabelConfig, seed: u64, draw: u64) -> Result<f64> {
    let mut rng = trial_rng(seed, draw);
    let f: Vec<usize> = (0..1usize << cfg.n).map(|_| rng.gen_range(0..1usize << cfg.m)).collect();
    let r_star = rng.gen_range(0..1usize << cfg.mu);
    let s = rng.gen_range(0..1usize << cfg.m);
    let circuit = QueryCircuit::random(cfg.qubits(), cfg.t, &mut rng)?;
    let mut advice = State::zero(2, cfg.qubits())?;
    if cfg.advice_queries > 0 {
        let prep = QueryCircuit::random(cfg.qubits(), cfg.advice_queries, &mut sub_rng(seed, draw, 1))?;
        advice = prep.run(advice, &OracleSpec::from_table(cfg.n, 2, cfg.m, f.clone())?)?;
    }
    relabel_trace_distance(cfg, &f, r_star, s, &circuit, &advice)
}

pub fn quantum_relabeling_tracedist(cfg: &RelabelConfig, draws: usize, seed: u64) -> Result<QuantumRelabelReport> {
    cfg.validate()?;
    if draws == 0 {
        return Err(invalid("need at least one draw"));
    }
    let distances = (0..draws as u64)
        .into_par_iter()
        .map(|d| quantum_relabel_draw(cfg, seed, d))
        .collect::<Result<Vec<f64>>>()?;
    let bound = cfg.bound();
    let mean = distances.iter().sum::<f64>() / draws as f64;
    let max = distances.iter().cloned().fold(0.0, f64::max);
    let flagged = (0..draws as u64).filter(|&d| distances[d as usize] > 3.0 * bound).collect();
    Ok(QuantumRelabelReport { config: *cfg, draws, mean, max, bound, flagged, pass: mean <= bound, distances })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, m: usize, seed: u64) -> Vec<usize> {
        let mut rng = trial_rng(seed, 0);
        (0..1usize << n).map(|_| rng.gen_range(0..1usize << m)).collect()
    }

    #[test]
    fn no_queries_no_advantage() {
        let r = classical_relabeling(6, 3, 0, &table(6, 3, 0), ClassicalMode::Exhaustive, 0).unwrap();
        assert_eq!(r.advantage, 0.0);
        assert_eq!(r.win_prob_exact.as_deref(), Some("1/2"));
        assert!(r.pass);
    }

    #[test]
    fn full_coverage_wins_except_zero_shift() {
        let r = classical_relabeling(5, 3, 32, &table(5, 3, 1), ClassicalMode::Exhaustive, 0).unwrap();
        assert!((r.win_prob - (1.0 - 1.0 / 16.0)).abs() < 1e-15);
        let capped = classical_relabeling(5, 3, 100, &table(5, 3, 1), ClassicalMode::Exhaustive, 0).unwrap();
        assert!(capped.capped && capped.t == 32);
    }

    #[test]
    fn exhaustive_matches_formula() {
        for n in [3, 6, 9] {
            for t in [1, 4, 7] {
                let r = classical_relabeling(n, 2, t, &table(n, 2, 2), ClassicalMode::Exhaustive, 0).unwrap();
                assert!(r.pass, "n={n} t={t}");
                assert!((r.advantage - r.predicted_advantage).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sampled_mode_within_bound() {
        let r = classical_relabeling(10, 4, 32, &table(10, 4, 3), ClassicalMode::Sampled { trials: 20_000 }, 7).unwrap();
        assert!(r.pass);
        assert!(r.ci99.unwrap().contains(0.5 + r.predicted_advantage));
    }

    #[test]
    fn zero_shift_is_indistinguishable() {
        let cfg = RelabelConfig::new(4, 2, 2, 2).unwrap();
        let f = table(4, 2, 4);
        let mut rng = trial_rng(4, 1);
        let c = QueryCircuit::random(6, 2, &mut rng).unwrap();
        let advice = State::zero(2, 6).unwrap();
        assert!(relabel_trace_distance(&cfg, &f, 1, 0, &c, &advice).unwrap() < 1e-12);
    }

    #[test]
    fn uniform_query_distance_matches_overlap() {
        let (n, m) = (6, 2);
        let cfg = RelabelConfig::new(n, m, n, 1).unwrap();
        let f = table(n, m, 5);
        let c = QueryCircuit::uniform_query(n).unwrap();
        let advice = State::zero(2, n + m).unwrap();
        let d = relabel_trace_distance(&cfg, &f, 17, 3, &c, &advice).unwrap();
        let overlap = 1.0 - 2f64.powi(-(n as i32));
        assert!((d - (1.0 - overlap * overlap).sqrt()).abs() < 1e-9);
        assert!(d <= cfg.bound());
    }

    #[test]
    fn small_sweep_respects_bound() {
        let cfg = RelabelConfig::new(6, 2, 6, 2).unwrap();
        let r = quantum_relabeling_tracedist(&cfg, 30, 0).unwrap();
        assert!(r.pass, "mean {} bound {}", r.mean, r.bound);
        let again = quantum_relabeling_tracedist(&cfg, 30, 0).unwrap();
        assert_eq!(r.distances, again.distances);
    }

    #[test]
    fn config_validation() {
        assert!(RelabelConfig::new(4, 2, 5, 1).is_err());
        assert!(RelabelConfig::new(16, 8, 4, 1).is_err());
        assert!((RelabelConfig::new(8, 4, 8, 1).unwrap().bound() - 0.125).abs() < 1e-15);
    }
}
