//! Repetition of a learner until a hypothesis verifies.

use rand::Rng;
use serde::Serialize;

use super::LearnResult;
use crate::error::{invalid, Result};
use crate::oracles::OracleSpec;
use crate::qudit::index_of;

/// `⌈log δ / log p⌉` trials, the count after which `p^k ≤ δ`.
pub fn amplify_budget(delta: f64, p: f64) -> Result<usize> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("target failure must lie in (0, 1), got {delta}")));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(invalid(format!("per-trial failure must lie in [0, 1), got {p}")));
    }
    if p == 0.0 {
        return Ok(1);
    }
    // The small offset keeps exact powers such as p = 1/2, δ = 2^-10 at 10.
    Ok(((delta.ln() / p.ln()) - 1e-9).ceil().max(1.0) as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Amplified {
    /// The accepted trial, or a ⊥ result carrying the total query count.
    pub result: LearnResult,
    pub trials_budgeted: usize,
    pub trials_run: usize,
    /// Every budgeted trial was rejected.
    pub failed: bool,
}

/// Runs `trial(i)` for `i = 0, 1, …` up to the budget for `(delta, p)` and keeps
/// the first hypothesis accepted by `verify`.
pub fn amplify<F, V>(delta: f64, p: f64, mut trial: F, verify: V) -> Result<Amplified>
where
    F: FnMut(usize) -> Result<LearnResult>,
    V: Fn(&[usize]) -> bool,
{
    let budget = amplify_budget(delta, p)?;
    let mut queries = 0;
    for i in 0..budget {
        let mut r = trial(i)?;
        queries += r.queries_used;
        if r.hypothesis.as_deref().is_some_and(&verify) {
            r.queries_used = queries;
            return Ok(Amplified { result: r, trials_budgeted: budget, trials_run: i + 1, failed: false });
        }
    }
    let result = LearnResult {
        hypothesis: None,
        success: false,
        exact_success_prob: None,
        queries_used: queries,
        degenerate: false,
    };
    Ok(Amplified { result, trials_budgeted: budget, trials_run: budget, failed: true })
}

/// Checks `⟨h, x⟩ mod q = f(x)` on `samples` uniform classical inputs.
pub fn verify_by_samples<R: Rng + ?Sized>(f: &OracleSpec, h: &[usize], samples: usize, rng: &mut R) -> bool {
    let (q, n) = (f.q(), f.n());
    if h.len() != n {
        return false;
    }
    (0..samples).all(|_| {
        let x: Vec<usize> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        let guess = x.iter().zip(h).map(|(a, b)| a * b).sum::<usize>() % q;
        guess == f.eval(index_of(&x, q))
    })
}
