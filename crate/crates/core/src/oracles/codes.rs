//! Three-qubit bit-flip code and its classical repetition counterpart.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::qudit::{gates, QuditState, UnitaryOp};
use crate::scalar::Real;

/// Basis indices spanned by each syndrome projector `P_0 … P_3`.
///
/// `P_0` is the code space; `P_k` for `k ≥ 1` contains the code words with qubit
/// `k − 1` flipped (little-endian, so qubit 0 is the low bit of the index).
pub const SYNDROME_SUPPORT: [[usize; 2]; 4] = [[0b000, 0b111], [0b001, 0b110], [0b010, 0b101], [0b100, 0b011]];

#[derive(Debug, Clone, PartialEq)]
pub struct CodeCycle<T> {
    /// Index `k` of the projector `P_k` that fired.
    pub syndrome: usize,
    /// Decoded logical qubit after correction.
    pub recovered: QuditState<T>,
}

fn encoder<T: Real>() -> Result<[UnitaryOp<T>; 2]> {
    Ok([UnitaryOp::new(vec![0, 1], gates::cnot())?, UnitaryOp::new(vec![0, 2], gates::cnot())?])
}

/// Encodes `logical` into `c₀|000⟩ + c₁|111⟩`.
pub fn bitflip_encode<T: Real>(logical: &QuditState<T>) -> Result<QuditState<T>> {
    if logical.q() != 2 || logical.num_digits() != 1 {
        return Err(invalid("bit-flip code encodes a single qubit"));
    }
    logical.ensure_normalized()?;
    let mut state = logical.tensor(&QuditState::zero(2, 2)?)?;
    for op in encoder::<T>()? {
        state.apply(&op)?;
    }
    Ok(state)
}

/// Measures the four syndrome projectors, collapsing `state`.
pub fn measure_syndrome<T: Real, R: Rng + ?Sized>(state: &mut QuditState<T>, rng: &mut R) -> Result<usize> {
    let amps = state.amplitudes();
    let weights: Vec<f64> = SYNDROME_SUPPORT
        .iter()
        .map(|s| s.iter().map(|&i| amps[i].norm_sqr().as_f64()).sum())
        .collect();
    let mut u = rng.gen::<f64>() * weights.iter().sum::<f64>();
    let mut outcome = 3;
    for (k, w) in weights.iter().enumerate() {
        if u < *w {
            outcome = k;
            break;
        }
        u -= w;
    }
    let keep = SYNDROME_SUPPORT[outcome];
    let projected = amps
        .iter()
        .enumerate()
        .map(|(i, a)| if keep.contains(&i) { *a } else { Complex::zero() })
        .collect();
    *state = QuditState::from_amplitudes(2, 3, projected)?.normalized()?;
    Ok(outcome)
}

/// Encode, flip the qubits in `errors`, measure the syndrome, correct and decode.
///
/// Any single flip is undone exactly. Two flips trigger the syndrome of the third
/// qubit, so the correction completes a logical `X` and the output is `X|ψ⟩`.
pub fn bitflip_code_cycle<T: Real, R: Rng + ?Sized>(
    logical: &QuditState<T>,
    errors: &[usize],
    rng: &mut R,
) -> Result<CodeCycle<T>> {
    let mut state = bitflip_encode(logical)?;
    for &pos in errors {
        if pos > 2 {
            return Err(invalid(format!("error position {pos} outside the 3-qubit block")));
        }
        state.apply(&UnitaryOp::single(pos, gates::pauli_x())?)?;
    }
    let syndrome = measure_syndrome(&mut state, rng)?;
    if syndrome > 0 {
        state.apply(&UnitaryOp::single(syndrome - 1, gates::pauli_x())?)?;
    }
    for op in encoder::<T>()?.iter().rev() {
        state.apply(op)?;
    }
    // Ancillas are back in |00⟩, so the logical qubit lives on indices 0 and 1.
    let amps = state.amplitudes();
    let recovered = QuditState::from_amplitudes(2, 1, vec![amps[0], amps[1]])?.normalized()?;
    Ok(CodeCycle { syndrome, recovered })
}

/// Probability that 3-bit majority voting decodes correctly at flip rate `p`.
pub fn repetition_success_prob(p: f64) -> f64 {
    1.0 - 3.0 * p * p + 2.0 * p * p * p
}

/// Counts majority-vote successes over `trials` independent 3-bit transmissions.
pub fn repetition_monte_carlo<R: Rng + ?Sized>(p: f64, trials: usize, rng: &mut R) -> usize {
    (0..trials)
        .filter(|_| (0..3).filter(|_| rng.gen_bool(p)).count() < 2)
        .count()
}
