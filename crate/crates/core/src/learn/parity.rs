//! Learning a parity from one (possibly noisy) quantum example.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{sample_index, LearnResult, SecretSpec};
use crate::error::{invalid, Result};
use crate::oracles::{example_state, example_state_with_errors, NoiseModel, RealizedNoise};
use crate::qudit::{digits_of, gates, UnitaryOp};
use crate::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadoutRule {
    /// Output the input register when the label qubit reads 1.
    LastRegister,
    /// Output the input register whenever it is nonzero.
    NonzeroString,
}

impl ReadoutRule {
    fn read(self, outcome: usize, n: usize) -> Option<Vec<usize>> {
        let digits = digits_of(outcome, 2, n + 1);
        let keep = match self {
            Self::LastRegister => digits[n] == 1,
            Self::NonzeroString => digits[..n].contains(&1),
        };
        keep.then(|| digits[..n].to_vec())
    }
}

/// Example state with label error `e`, after Hadamards on all `n + 1` qubits.
///
/// For `e = 0` this is `(|0ⁿ⟩|0⟩ + |s⟩|1⟩)/√2`; for `e = 1` the second term
/// changes sign.
pub fn parity_post_state(secret: &SecretSpec, e: usize) -> Result<State> {
    let spec = secret.oracle()?;
    let mut state = example_state_with_errors(&spec, &[e])?;
    for j in 0..=secret.n() {
        state.apply(&UnitaryOp::single(j, gates::hadamard())?)?;
    }
    Ok(state)
}

fn branch_success(secret: &SecretSpec, e: usize, rule: ReadoutRule) -> Result<f64> {
    let dist = parity_post_state(secret, e)?.exact_distribution();
    Ok(dist
        .iter()
        .enumerate()
        .filter(|(z, _)| rule.read(*z, secret.n()).as_deref() == Some(secret.s.as_slice()))
        .map(|(_, p)| p)
        .sum())
}

/// One noisy example with parity noise rate `eta`, read out with the rule that
/// matches the noise level: the label qubit when noiseless, any nonzero string
/// otherwise.
pub fn quantum_parity_learn<R: Rng + ?Sized>(secret: &SecretSpec, eta: f64, rng: &mut R) -> Result<LearnResult> {
    let rule = if eta == 0.0 { ReadoutRule::LastRegister } else { ReadoutRule::NonzeroString };
    quantum_parity_learn_with(secret, eta, rule, rng)
}

/// The exact success probability mixes both label-error branches with weights
/// `1 − η` and `η`.
pub fn quantum_parity_learn_with<R: Rng + ?Sized>(
    secret: &SecretSpec,
    eta: f64,
    rule: ReadoutRule,
    rng: &mut R,
) -> Result<LearnResult> {
    if secret.q != 2 {
        return Err(invalid("parity learning works over q = 2"));
    }
    let n = secret.n();
    let spec = secret.oracle()?.with_noise(NoiseModel::BernoulliParity { eta })?;
    let sample = example_state(&spec, rng)?;
    let mut state = sample.state;
    for j in 0..=n {
        state.apply(&UnitaryOp::single(j, gates::hadamard())?)?;
    }
    let outcome = sample_index(&state.exact_distribution(), rng);
    debug_assert!(matches!(sample.noise, RealizedNoise::Global(_)));
    let exact = (1.0 - eta) * branch_success(secret, 0, rule)? + eta * branch_success(secret, 1, rule)?;
    let mut result = LearnResult::judge(secret, rule.read(outcome, n), Some(exact), 1);
    result.degenerate = secret.is_zero();
    Ok(result)
}
