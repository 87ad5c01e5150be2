use num_complex::Complex;

use super::matrix::CMatrix;
use super::state::{register_size, QuditState};
use crate::error::{Error, Result};
use crate::scalar::{precision_tol, Real, STATE_TOL};

/// Mixed state on `m` qudits of dimension `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    q: usize,
    m: usize,
    rho: CMatrix<T>,
}

/// Diagnostics for the density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validity {
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub min_eigenvalue: f64,
}

impl Validity {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.trace_error <= tol && self.hermiticity_error <= tol && self.min_eigenvalue >= -tol
    }
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(q: usize, m: usize, rho: CMatrix<T>) -> Result<Self> {
        let size = register_size(q, m)?;
        if rho.rows() != size || rho.cols() != size {
            return Err(Error::DimensionMismatch { expected: size, actual: rho.rows() });
        }
        Ok(Self { q, m, rho })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &QuditState<T>) -> Self {
        let a = state.amplitudes();
        let rho = CMatrix::from_fn(a.len(), a.len(), |r, c| a[r] * a[c].conj());
        Self { q: state.q(), m: state.num_digits(), rho }
    }

    /// `I / q^m`.
    pub fn maximally_mixed(q: usize, m: usize) -> Result<Self> {
        let size = register_size(q, m)?;
        let rho = CMatrix::identity(size).scale(Complex::new(T::one() / T::of(size as f64), T::zero()));
        Ok(Self { q, m, rho })
    }

    /// Random mixed state `Σ_i p_i |ψ_i⟩⟨ψ_i|` over `rank` random pure states.
    pub fn random<R: rand::Rng + ?Sized>(q: usize, m: usize, rank: usize, rng: &mut R) -> Result<Self> {
        let size = register_size(q, m)?;
        let weights: Vec<f64> = (0..rank.max(1)).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = weights.iter().sum();
        let mut rho = CMatrix::zeros(size, size);
        for w in weights {
            let psi = QuditState::<T>::random(q, m, rng)?;
            let term = Self::from_pure(&psi).rho.scale(Complex::new(T::of(w / total), T::zero()));
            rho = rho.add(&term)?;
        }
        Ok(Self { q, m, rho })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_digits(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.rho
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.rho
    }

    pub fn trace(&self) -> Complex<T> {
        self.rho.trace()
    }

    pub fn validity(&self) -> Validity {
        let tr = self.trace();
        Validity {
            trace_error: (tr - Complex::new(T::one(), T::zero())).norm().as_f64(),
            hermiticity_error: self.rho.hermiticity_deviation().as_f64(),
            min_eigenvalue: self.rho.hermitian_eigenvalues().first().copied().unwrap_or(0.0),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validity().is_valid(precision_tol::<T>(STATE_TOL, self.rho.rows()))
    }

    /// `⟨i|ρ|i⟩` for every basis index.
    pub fn populations(&self) -> Vec<T> {
        (0..self.rho.rows()).map(|i| self.rho[(i, i)].re).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    #[test]
    fn pure_and_mixed_states_are_valid() {
        let mut rng = trial_rng(9, 0);
        let psi = QuditState::<f64>::random(3, 2, &mut rng).unwrap();
        assert!(DensityMatrix::from_pure(&psi).is_valid());
        assert!(DensityMatrix::<f64>::maximally_mixed(2, 2).unwrap().is_valid());
        assert!(DensityMatrix::<f64>::random(2, 1, 3, &mut rng).unwrap().is_valid());
    }

    #[test]
    fn non_psd_matrix_is_flagged() {
        let rho = CMatrix::<f64>::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        let d = DensityMatrix::new(2, 1, rho).unwrap();
        let v = d.validity();
        assert!(v.trace_error < 1e-12);
        assert!((v.min_eigenvalue + 0.5).abs() < 1e-12);
        assert!(!d.is_valid());
    }

    #[test]
    fn shape_is_checked() {
        assert!(DensityMatrix::new(2, 2, CMatrix::<f64>::identity(2)).is_err());
    }
}
