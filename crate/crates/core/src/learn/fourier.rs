//! Fourier sampling over `Z_q`: the extended Bernstein–Vazirani learner and its
//! variant on LWE-style examples with independent per-input errors.

use rand::Rng;
use serde::Serialize;

use super::{sample_index, LearnResult, SecretSpec};
use crate::error::{invalid, Result};
use crate::modmath::{gcd, mod_inverse, totient, ErrorDistribution};
use crate::oracles::{example_state_capped, example_state_with_errors, NoiseModel, RealizedNoise, DEFAULT_EXAMPLE_CAP};
use crate::qudit::{digits_of, index_of, qft_all};
use crate::State;

/// Maps a measured `(z_1, …, z_n, z_{n+1})` to `s̃_i = −z_i / z_{n+1} mod q`, or
/// `None` when `z_{n+1}` is not a unit.
pub fn ebv_postprocess(z: &[usize], q: usize) -> Option<Vec<usize>> {
    let (&last, head) = z.split_last()?;
    if gcd(last as u64, q as u64) != 1 {
        return None;
    }
    let inv = mod_inverse(last as u64, q as u64).ok()? as usize;
    Some(head.iter().map(|&zi| ((q - zi % q) % q) * inv % q).collect())
}

/// Probability mass of outcomes that post-process to `secret`.
pub fn ebv_success_probability(dist: &[f64], secret: &SecretSpec) -> f64 {
    let (q, n) = (secret.q, secret.n());
    dist.iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .filter(|(i, _)| ebv_postprocess(&digits_of(*i, q, n + 1), q).as_deref() == Some(secret.s.as_slice()))
        .map(|(_, p)| p)
        .sum()
}

/// Mass on the line `z = −z_{n+1}·s`, over all `z_{n+1} ∈ Z_q`.
pub fn ebv_support_mass(dist: &[f64], secret: &SecretSpec) -> f64 {
    let q = secret.q;
    (0..q)
        .map(|t| {
            let mut digits: Vec<usize> = secret.s.iter().map(|&si| (q - si * t % q) % q).collect();
            digits.push(t);
            dist[index_of(&digits, q)]
        })
        .sum()
}

fn fourier_sample<R: Rng + ?Sized>(mut state: State, secret: &SecretSpec, rng: &mut R) -> Result<(LearnResult, Vec<f64>)> {
    qft_all(&mut state, false)?;
    let dist = state.exact_distribution();
    let exact = ebv_success_probability(&dist, secret);
    let outcome = sample_index(&dist, rng);
    let hypothesis = ebv_postprocess(&digits_of(outcome, secret.q, secret.n() + 1), secret.q);
    Ok((LearnResult::judge(secret, hypothesis, Some(exact), 1), dist))
}

/// One noiseless example of `⟨s, x⟩ mod q`, QFT on every digit, measure.
pub fn extended_bv<R: Rng + ?Sized>(secret: &SecretSpec, rng: &mut R) -> Result<LearnResult> {
    let state = example_state_with_errors(&secret.oracle()?, &[])?;
    Ok(fourier_sample(state, secret, rng)?.0)
}

/// `φ(q) / (24 η q)`.
pub fn lwe_lower_bound(q: usize, eta: u64) -> f64 {
    totient(q as u64) as f64 / (24.0 * eta as f64 * q as f64)
}

/// `(1/q^{2n+1}) Σ_{z coprime to q} |Σ_x ω^{e_x z}|²` for errors `e_x ∈ Z_q`.
pub fn interference_success_probability(q: usize, n: usize, errors: &[usize]) -> f64 {
    let tau = std::f64::consts::TAU;
    let total: f64 = (1..q)
        .filter(|&z| gcd(z as u64, q as u64) == 1)
        .map(|z| {
            let (re, im) = errors.iter().fold((0.0, 0.0), |(re, im), &e| {
                let theta = tau * ((e * z) % q) as f64 / q as f64;
                (re + theta.cos(), im + theta.sin())
            });
            re * re + im * im
        })
        .sum();
    let q = q as f64;
    total / (q.powi(2 * n as i32) * q)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LweLearnResult {
    pub result: LearnResult,
    /// Realized `e_x`, indexed by input.
    pub errors: Vec<usize>,
    /// Success probability from the closed-form interference sum.
    pub closed_form: f64,
    pub lower_bound: f64,
}

/// Extended Bernstein–Vazirani on an example with independent errors `e_x ~ χ`.
pub fn extended_bv_lwe<R: Rng + ?Sized>(
    secret: &SecretSpec,
    chi: &ErrorDistribution,
    rng: &mut R,
) -> Result<LweLearnResult> {
    extended_bv_lwe_capped(secret, chi, DEFAULT_EXAMPLE_CAP, rng)
}

pub fn extended_bv_lwe_capped<R: Rng + ?Sized>(
    secret: &SecretSpec,
    chi: &ErrorDistribution,
    cap: u64,
    rng: &mut R,
) -> Result<LweLearnResult> {
    let eta = chi.eta();
    if eta == 0 {
        return Err(invalid("the LWE learner needs a noise bound η ≥ 1"));
    }
    let spec = secret.oracle()?.with_noise(NoiseModel::IndependentAdditive { chi: *chi })?;
    let sample = example_state_capped(&spec, rng, cap)?;
    let errors = match sample.noise {
        RealizedNoise::PerInput(e) => e,
        _ => unreachable!("independent noise realizes one error per input"),
    };
    extended_bv_lwe_with_errors(secret, eta, errors, sample.state, rng)
}

/// Same learner on a fixed error assignment.
pub fn extended_bv_lwe_fixed<R: Rng + ?Sized>(
    secret: &SecretSpec,
    eta: u64,
    errors: Vec<usize>,
    rng: &mut R,
) -> Result<LweLearnResult> {
    let state = example_state_with_errors(&secret.oracle()?, &errors)?;
    extended_bv_lwe_with_errors(secret, eta, errors, state, rng)
}

fn extended_bv_lwe_with_errors<R: Rng + ?Sized>(
    secret: &SecretSpec,
    eta: u64,
    errors: Vec<usize>,
    state: State,
    rng: &mut R,
) -> Result<LweLearnResult> {
    let (result, _) = fourier_sample(state, secret, rng)?;
    let closed_form = interference_success_probability(secret.q, secret.n(), &errors);
    Ok(LweLearnResult { result, errors, closed_form, lower_bound: lwe_lower_bound(secret.q, eta.max(1)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::totient_ratio;
    use crate::rng::trial_rng;

    fn run(q: usize, s: Vec<usize>) -> LearnResult {
        extended_bv(&SecretSpec::new(q, s).unwrap(), &mut trial_rng(0, 0)).unwrap()
    }

    #[test]
    fn qubit_case_matches_parity_learning() {
        let r = run(2, vec![1, 0, 1]);
        assert!((r.exact_success_prob.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn prime_modulus_example_secret() {
        let r = run(23, vec![12, 0, 7, 2]);
        assert!((r.exact_success_prob.unwrap() - 22.0 / 23.0).abs() < 1e-9);
    }

    #[test]
    fn composite_modulus_gives_totient_ratio() {
        let r = run(12, vec![5, 7]);
        assert!((r.exact_success_prob.unwrap() - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn success_matches_euler_product_on_small_grid() {
        for q in 2..=9 {
            for n in 1..=2 {
                for t in 0..5 {
                    let secret = SecretSpec::random(n, q, &mut trial_rng(q as u64, t)).unwrap();
                    let r = extended_bv(&secret, &mut trial_rng(1, t)).unwrap();
                    assert!((r.exact_success_prob.unwrap() - totient_ratio(q as u64)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn mass_concentrates_on_secret_line() {
        let secret = SecretSpec::new(6, vec![4, 1, 3]).unwrap();
        let mut state = example_state_with_errors::<f64>(&secret.oracle().unwrap(), &[]).unwrap();
        qft_all(&mut state, false).unwrap();
        let mass = ebv_support_mass(&state.exact_distribution(), &secret);
        assert!((mass - 1.0).abs() < 1e-9);
    }

    #[test]
    fn postprocess_inverts_unit_labels() {
        // z = −t·s with t = 3, s = (2, 4), q = 7.
        let z = [1, 2, 3];
        assert_eq!(ebv_postprocess(&z, 7), Some(vec![2, 4]));
        assert_eq!(ebv_postprocess(&[1, 2], 4), None);
    }

    #[test]
    fn zero_errors_reduce_to_noiseless() {
        let secret = SecretSpec::new(7, vec![3, 5]).unwrap();
        let r = extended_bv_lwe_fixed(&secret, 1, vec![0; 49], &mut trial_rng(0, 0)).unwrap();
        assert!((r.result.exact_success_prob.unwrap() - 6.0 / 7.0).abs() < 1e-9);
        assert!((r.closed_form - 6.0 / 7.0).abs() < 1e-9);
    }

    #[test]
    fn statevector_matches_interference_sum_for_constant_shift() {
        let secret = SecretSpec::new(7, vec![2, 6]).unwrap();
        let r = extended_bv_lwe_fixed(&secret, 1, vec![1; 49], &mut trial_rng(0, 0)).unwrap();
        assert!((r.result.exact_success_prob.unwrap() - r.closed_form).abs() < 1e-9);
    }

    #[test]
    fn sampled_errors_respect_lower_bound() {
        for q in [5usize, 7, 11, 13] {
            let chi = ErrorDistribution::bounded_uniform(1);
            for t in 0..20 {
                let mut rng = trial_rng(q as u64, t);
                let secret = SecretSpec::random(2, q, &mut rng).unwrap();
                let r = extended_bv_lwe(&secret, &chi, &mut rng).unwrap();
                let exact = r.result.exact_success_prob.unwrap();
                assert!((exact - r.closed_form).abs() < 1e-9);
                assert!(exact >= r.lower_bound);
            }
        }
    }

    #[test]
    fn zero_bound_and_cap_are_rejected() {
        let secret = SecretSpec::new(5, vec![1, 2]).unwrap();
        let chi0 = ErrorDistribution::bounded_uniform(0);
        assert!(extended_bv_lwe(&secret, &chi0, &mut trial_rng(0, 0)).is_err());
        let chi = ErrorDistribution::bounded_uniform(1);
        let err = extended_bv_lwe_capped(&secret, &chi, 10, &mut trial_rng(0, 0)).unwrap_err();
        assert_eq!(err, crate::Error::CapExceeded { requested: 25, cap: 10 });
    }
}
