//! Deutsch–Jozsa and Bernstein–Vazirani via phase kickback on a qubit register.

use rand::Rng;
use serde::Serialize;

use super::{low_marginal, sample_index, LearnResult, SecretSpec};
use crate::error::{invalid, Result};
use crate::oracles::{membership_apply, OracleSpec};
use crate::qudit::{digits_of, gates, UnitaryOp};
use crate::State;

/// One oracle query between Hadamard layers, output qubit prepared in `|−⟩`.
/// Returns the exact distribution of the `n` input qubits.
fn kickback_distribution(f: &OracleSpec) -> Result<Vec<f64>> {
    if f.q() != 2 || f.out_digits() != 1 {
        return Err(invalid("phase kickback needs a Boolean function"));
    }
    let n = f.n();
    let mut state = State::zero(2, n + 1)?;
    state.apply(&UnitaryOp::single(n, gates::pauli_x())?)?;
    for j in 0..=n {
        state.apply(&UnitaryOp::single(j, gates::hadamard())?)?;
    }
    membership_apply(&mut state, f)?;
    for j in 0..n {
        state.apply(&UnitaryOp::single(j, gates::hadamard())?)?;
    }
    Ok(low_marginal(&state.exact_distribution(), 2, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DjVerdict {
    Constant,
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DjReport {
    pub verdict: DjVerdict,
    /// Exact probability of reading `0ⁿ`.
    pub p_zero: f64,
    /// `p_zero` is neither 0 nor 1, so `f` is neither constant nor balanced.
    pub promise_violated: bool,
}

/// Decides constant versus balanced with a single query.
pub fn deutsch_jozsa<R: Rng + ?Sized>(f: &OracleSpec, rng: &mut R) -> Result<DjReport> {
    let dist = kickback_distribution(f)?;
    let p_zero = dist[0];
    let outcome = sample_index(&dist, rng);
    let verdict = if outcome == 0 { DjVerdict::Constant } else { DjVerdict::Balanced };
    let tol = 1e-9;
    let promise_violated = p_zero > tol && p_zero < 1.0 - tol;
    Ok(DjReport { verdict, p_zero, promise_violated })
}

/// Recovers `s` from one query to `x ↦ ⟨s, x⟩ mod 2`.
pub fn bernstein_vazirani<R: Rng + ?Sized>(secret: &SecretSpec, rng: &mut R) -> Result<LearnResult> {
    if secret.q != 2 {
        return Err(invalid("Bernstein–Vazirani works over q = 2"));
    }
    let n = secret.n();
    let dist = kickback_distribution(&secret.oracle()?)?;
    let target = crate::qudit::index_of(&secret.s, 2);
    let outcome = sample_index(&dist, rng);
    Ok(LearnResult::judge(secret, Some(digits_of(outcome, 2, n)), Some(dist[target]), 1))
}

/// Exact output distribution over `m ∈ {0,1}ⁿ` for the Bernstein–Vazirani circuit.
pub fn bernstein_vazirani_distribution(secret: &SecretSpec) -> Result<Vec<f64>> {
    kickback_distribution(&secret.oracle()?)
}
