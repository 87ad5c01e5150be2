use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::spec::{add_digitwise, NoiseModel, OracleSpec};
use crate::error::{Error, Result};
use crate::modmath::sample_error;
use crate::qudit::QuditState;
use crate::scalar::Real;

/// Default limit on `q^n` for per-input error sampling.
pub const DEFAULT_EXAMPLE_CAP: u64 = 1 << 16;

/// Noise actually drawn for one example.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RealizedNoise {
    None,
    /// The global parity bit.
    Global(usize),
    /// `e_x` in `Z_q`, indexed by input.
    PerInput(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct ExampleSample<T> {
    pub state: QuditState<T>,
    pub noise: RealizedNoise,
}

/// `(1/√q^n) Σ_x |x⟩|f(x) + e_x⟩` for an explicit error assignment.
///
/// `errors` is either empty (noiseless), a single entry applied to every input,
/// or one entry per input. Errors act on the lowest output digit.
pub fn example_state_with_errors<T: Real>(spec: &OracleSpec, errors: &[usize]) -> Result<QuditState<T>> {
    let inputs = spec.domain_size();
    if !(errors.len() <= 1 || errors.len() == inputs) {
        return Err(Error::DimensionMismatch { expected: inputs, actual: errors.len() });
    }
    let (q, k) = (spec.q(), spec.out_digits());
    let dim = inputs * spec.range_size();
    let amp = Complex::new(T::one() / T::of(inputs as f64).sqrt(), T::zero());
    let mut amps = vec![Complex::zero(); dim];
    for x in 0..inputs {
        let e = match errors.len() {
            0 => 0,
            1 => errors[0],
            _ => errors[x],
        };
        let y = add_digitwise(spec.eval(x), e % q, q, k);
        amps[x + inputs * y] = amp;
    }
    QuditState::from_amplitudes(q, spec.register_digits(), amps)
}

/// Draws one sample from the example oracle with the default cap.
pub fn example_state<T: Real, R: Rng + ?Sized>(spec: &OracleSpec, rng: &mut R) -> Result<ExampleSample<T>> {
    example_state_capped(spec, rng, DEFAULT_EXAMPLE_CAP)
}

/// Draws one sample; independent-noise oracles need `q^n ≤ cap` error draws.
pub fn example_state_capped<T: Real, R: Rng + ?Sized>(
    spec: &OracleSpec,
    rng: &mut R,
    cap: u64,
) -> Result<ExampleSample<T>> {
    match spec.noise() {
        NoiseModel::None => Ok(ExampleSample { state: example_state_with_errors(spec, &[])?, noise: RealizedNoise::None }),
        NoiseModel::BernoulliParity { eta } => {
            let e = usize::from(rng.gen::<f64>() < eta);
            Ok(ExampleSample { state: example_state_with_errors(spec, &[e])?, noise: RealizedNoise::Global(e) })
        }
        NoiseModel::IndependentAdditive { chi } => {
            let requested = spec.domain_size() as u64;
            if requested > cap {
                return Err(Error::CapExceeded { requested, cap });
            }
            let q = spec.q() as u64;
            let errors: Vec<usize> = (0..requested).map(|_| sample_error(&chi, q, rng) as usize).collect();
            let state = example_state_with_errors(spec, &errors)?;
            Ok(ExampleSample { state, noise: RealizedNoise::PerInput(errors) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::ErrorDistribution;
    use crate::qudit::{digits_of, index_of};
    use crate::rng::trial_rng;

    #[test]
    fn noiseless_single_qubit_constant_zero() {
        let f = OracleSpec::constant(1, 2, 0).unwrap();
        let s: QuditState<f64> = example_state(&f, &mut trial_rng(0, 0)).unwrap().state;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // |x=0,y=0⟩ -> index 0; |x=1,y=0⟩ -> index 1.
        assert!((s.amplitudes()[0].re - h).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - h).abs() < 1e-15);
        assert!(s.amplitudes()[2].norm() == 0.0 && s.amplitudes()[3].norm() == 0.0);
    }

    #[test]
    fn zero_rate_parity_noise_is_noiseless() {
        let f = OracleSpec::inner_product(2, &[1, 0, 1]).unwrap();
        let clean: QuditState<f64> = example_state_with_errors(&f, &[]).unwrap();
        let noisy = f.clone().with_noise(NoiseModel::BernoulliParity { eta: 0.0 }).unwrap();
        for seed in 0..50 {
            let sample = example_state::<f64, _>(&noisy, &mut trial_rng(seed, 0)).unwrap();
            assert_eq!(sample.state, clean);
            assert_eq!(sample.noise, RealizedNoise::Global(0));
        }
    }

    #[test]
    fn qutrit_inner_product_support() {
        let s = [1usize, 2];
        let f = OracleSpec::inner_product(3, &s).unwrap();
        let state: QuditState<f64> = example_state(&f, &mut trial_rng(0, 0)).unwrap().state;
        let mut expected_support = Vec::new();
        for x in 0..9 {
            let xd = digits_of(x, 3, 2);
            let fx = (xd[0] * s[0] + xd[1] * s[1]) % 3;
            expected_support.push(index_of(&[xd[0], xd[1], fx], 3));
        }
        for (i, a) in state.amplitudes().iter().enumerate() {
            if expected_support.contains(&i) {
                assert!((a.re - 1.0 / 3.0).abs() < 1e-15 && a.im == 0.0);
            } else {
                assert_eq!(a.norm(), 0.0);
            }
        }
    }

    #[test]
    fn amplitudes_have_uniform_modulus_on_exactly_q_to_n_states() {
        let mut rng = trial_rng(3, 0);
        let chi = ErrorDistribution::bounded_uniform(1);
        let f = OracleSpec::inner_product(5, &[3, 1]).unwrap().with_noise(NoiseModel::IndependentAdditive { chi }).unwrap();
        for _ in 0..20 {
            let s: QuditState<f64> = example_state(&f, &mut rng).unwrap().state;
            let support: Vec<f64> = s.amplitudes().iter().map(|a| a.norm()).filter(|&m| m > 0.0).collect();
            assert_eq!(support.len(), 25);
            assert!(support.iter().all(|m| (m - 0.2).abs() < 1e-15));
        }
    }

    #[test]
    fn independent_noise_respects_cap() {
        let chi = ErrorDistribution::bounded_uniform(1);
        let f = OracleSpec::inner_product(5, &[1, 2, 3]).unwrap().with_noise(NoiseModel::IndependentAdditive { chi }).unwrap();
        let err = example_state_capped::<f64, _>(&f, &mut trial_rng(0, 0), 100).unwrap_err();
        assert_eq!(err, Error::CapExceeded { requested: 125, cap: 100 });
    }
}
