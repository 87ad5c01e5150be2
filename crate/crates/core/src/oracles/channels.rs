//! Single-qubit noise channels in operator-sum form.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::qudit::{gates, CMatrix, DensityMatrix};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "snake_case")]
pub enum Channel {
    /// `(1−η)ρ + η XρX†`.
    BitFlip(f64),
    /// `(1−η)ρ + η ZρZ†`.
    PhaseFlip(f64),
    /// Spontaneous emission with probability `γ`.
    AmplitudeDamping(f64),
    /// `(1−η)ρ + η I/2`.
    Depolarizing(f64),
}

impl Channel {
    pub fn parameter(&self) -> f64 {
        match *self {
            Self::BitFlip(p) | Self::PhaseFlip(p) | Self::AmplitudeDamping(p) | Self::Depolarizing(p) => p,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::BitFlip(_) => "bit_flip",
            Self::PhaseFlip(_) => "phase_flip",
            Self::AmplitudeDamping(_) => "amplitude_damping",
            Self::Depolarizing(_) => "depolarizing",
        }
    }

    /// Kraus operators `{E_k}` with `Σ E_k† E_k = I`.
    pub fn kraus<T: Real>(&self) -> Vec<CMatrix<T>> {
        let re = |x: f64| Complex::new(T::of(x), T::zero());
        match *self {
            Self::BitFlip(eta) => vec![
                gates::identity::<T>(2).scale(re((1.0 - eta).sqrt())),
                gates::pauli_x::<T>().scale(re(eta.sqrt())),
            ],
            Self::PhaseFlip(eta) => vec![
                gates::identity::<T>(2).scale(re((1.0 - eta).sqrt())),
                gates::pauli_z::<T>().scale(re(eta.sqrt())),
            ],
            Self::AmplitudeDamping(gamma) => vec![
                CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()]).expect("2x2"),
                CMatrix::from_real(2, 2, &[0.0, gamma.sqrt(), 0.0, 0.0]).expect("2x2"),
            ],
            // I/2 = (ρ + XρX + YρY + ZρZ)/4 for any unit-trace ρ.
            Self::Depolarizing(eta) => vec![
                gates::identity::<T>(2).scale(re((1.0 - 0.75 * eta).sqrt())),
                gates::pauli_x::<T>().scale(re((eta / 4.0).sqrt())),
                gates::pauli_y::<T>().scale(re((eta / 4.0).sqrt())),
                gates::pauli_z::<T>().scale(re((eta / 4.0).sqrt())),
            ],
        }
    }
}

/// Applies `channel` to a single-qubit density matrix.
pub fn channel_apply<T: Real>(rho: &DensityMatrix<T>, channel: Channel) -> Result<DensityMatrix<T>> {
    if rho.q() != 2 || rho.num_digits() != 1 {
        return Err(invalid("noise channels act on a single qubit"));
    }
    let p = channel.parameter();
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("channel parameter must lie in [0, 1], got {p}")));
    }
    let input = rho.matrix();
    let mut out = CMatrix::zeros(2, 2);
    for e in channel.kraus::<T>() {
        out = out.add(&e.matmul(input)?.matmul(&e.adjoint())?)?;
    }
    DensityMatrix::new(2, 1, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::QuditState;
    use crate::rng::trial_rng;

    fn zero() -> DensityMatrix<f64> {
        DensityMatrix::from_pure(&QuditState::zero(2, 1).unwrap())
    }

    #[test]
    fn kraus_sets_are_complete() {
        for ch in [Channel::BitFlip(0.3), Channel::PhaseFlip(0.7), Channel::AmplitudeDamping(0.4), Channel::Depolarizing(0.9)] {
            let sum = ch
                .kraus::<f64>()
                .iter()
                .map(|e| e.adjoint().matmul(e).unwrap())
                .fold(CMatrix::zeros(2, 2), |acc, m| acc.add(&m).unwrap());
            assert!(sum.max_abs_diff(&CMatrix::identity(2)) < 1e-12, "{ch:?}");
        }
    }

    #[test]
    fn zero_bit_flip_is_identity() {
        let mut rng = trial_rng(0, 0);
        let rho = DensityMatrix::<f64>::random(2, 1, 2, &mut rng).unwrap();
        let out = channel_apply(&rho, Channel::BitFlip(0.0)).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn bit_flip_on_zero_populates_one() {
        let eta = 0.2;
        let out = channel_apply(&zero(), Channel::BitFlip(eta)).unwrap();
        let expected = CMatrix::from_real(2, 2, &[1.0 - eta, 0.0, 0.0, eta]).unwrap();
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn full_depolarizing_gives_maximally_mixed() {
        let mut rng = trial_rng(1, 0);
        let rho = DensityMatrix::<f64>::random(2, 1, 1, &mut rng).unwrap();
        let out = channel_apply(&rho, Channel::Depolarizing(1.0)).unwrap();
        let mixed = DensityMatrix::<f64>::maximally_mixed(2, 1).unwrap();
        assert!(out.matrix().max_abs_diff(mixed.matrix()) < 1e-12);
    }

    #[test]
    fn depolarizing_matches_direct_formula() {
        let mut rng = trial_rng(2, 0);
        let rho = DensityMatrix::<f64>::random(2, 1, 2, &mut rng).unwrap();
        let eta = 0.35;
        let out = channel_apply(&rho, Channel::Depolarizing(eta)).unwrap();
        let half = CMatrix::<f64>::identity(2).scale(Complex::new(0.5 * eta, 0.0));
        let direct = rho.matrix().scale(Complex::new(1.0 - eta, 0.0)).add(&half).unwrap();
        assert!(out.matrix().max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn flips_are_unital_and_damping_cools() {
        let mixed = DensityMatrix::<f64>::maximally_mixed(2, 1).unwrap();
        for ch in [Channel::BitFlip(0.3), Channel::PhaseFlip(0.6)] {
            let out = channel_apply(&mixed, ch).unwrap();
            assert!(out.matrix().max_abs_diff(mixed.matrix()) < 1e-15);
        }
        let mut last = 0.5;
        for g in [0.0, 0.1, 0.4, 0.8, 1.0] {
            let p0 = channel_apply(&mixed, Channel::AmplitudeDamping(g)).unwrap().populations()[0];
            assert!(p0 >= last - 1e-15);
            last = p0;
        }
        assert!((last - 1.0).abs() < 1e-15);
    }

    #[test]
    fn multi_qubit_input_rejected() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2, 2).unwrap();
        assert!(channel_apply(&rho, Channel::BitFlip(0.1)).is_err());
        assert!(channel_apply(&zero(), Channel::BitFlip(1.5)).is_err());
    }
}
