//! Quantum Fourier transform over `Z_q`, built as a dense matrix.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use super::gates;
use super::matrix::CMatrix;
use super::state::{QuditState, UnitaryOp};
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// `F[y][x] = ω_q^{xy} / √q`; the inverse uses `ω_q^{−xy}`.
pub fn qft_matrix<T: Real>(q: usize, inverse: bool) -> CMatrix<T> {
    let norm = T::one() / T::of(q as f64).sqrt();
    let sign = if inverse { -1 } else { 1 };
    CMatrix::from_fn(q, q, |y, x| T::root_of_unity(sign * ((x * y) % q) as i64, q) * norm)
}

/// Applies the single-digit QFT to each listed target digit.
pub fn qft<T: Real>(state: &mut QuditState<T>, targets: &[usize], inverse: bool) -> Result<()> {
    if state.q() < 2 {
        return Err(invalid("QFT needs q ≥ 2"));
    }
    let f = qft_matrix(state.q(), inverse);
    for &t in targets {
        state.apply(&UnitaryOp::single(t, f.clone())?)?;
    }
    Ok(())
}

/// QFT on every digit of the register.
pub fn qft_all<T: Real>(state: &mut QuditState<T>, inverse: bool) -> Result<()> {
    let targets: Vec<usize> = (0..state.num_digits()).collect();
    qft(state, &targets, inverse)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct OrthogonalityReport {
    pub q: usize,
    pub pairs_checked: usize,
    /// `max |Σ_y ω^{xy} ω^{−x'y} − q δ_{x,x'}|` over all pairs.
    pub max_deviation: f64,
}

/// Checks `Σ_y ω^{xy} ω^{−x'y} = q·δ_{x,x'}` for every pair in `Z_q`.
pub fn check_root_orthogonality(q: usize) -> Result<OrthogonalityReport> {
    if q < 2 {
        return Err(invalid("orthogonality check needs q ≥ 2"));
    }
    let mut max_deviation = 0.0f64;
    for x in 0..q {
        for xp in 0..q {
            let dev = (root_sum(q, x, xp) - Complex::new(if x == xp { q as f64 } else { 0.0 }, 0.0)).norm();
            max_deviation = max_deviation.max(dev);
        }
    }
    Ok(OrthogonalityReport { q, pairs_checked: q * q, max_deviation })
}

/// `Σ_y ω^{xy} ω^{−x'y}`, each factor evaluated separately.
pub fn root_sum(q: usize, x: usize, xp: usize) -> Complex<f64> {
    (0..q).fold(Complex::zero(), |acc, y| {
        acc + f64::root_of_unity((x * y) as i64, q) * f64::root_of_unity(-((xp * y) as i64), q)
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ShiftDiagonalityReport {
    pub q: usize,
    /// Largest off-diagonal modulus of `F·U(1)·F†`.
    pub max_off_diagonal: f64,
    /// Largest `|(F U F†)_{yy} − ω^y|`.
    pub max_diagonal_error: f64,
}

impl ShiftDiagonalityReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_off_diagonal.max(self.max_diagonal_error)
    }
}

/// Verifies that the shift `U(1): |x⟩ → |x+1⟩` is diagonal in the Fourier basis,
/// `F·U(1)·F† = diag(ω^y)`.
pub fn check_shift_diagonality(q: usize) -> Result<ShiftDiagonalityReport> {
    let conj = shift_in_fourier_basis::<f64>(q)?;
    let mut max_off_diagonal = 0.0f64;
    let mut max_diagonal_error = 0.0f64;
    for r in 0..q {
        for c in 0..q {
            if r == c {
                max_diagonal_error = max_diagonal_error.max((conj[(r, c)] - f64::root_of_unity(r as i64, q)).norm());
            } else {
                max_off_diagonal = max_off_diagonal.max(conj[(r, c)].norm());
            }
        }
    }
    Ok(ShiftDiagonalityReport { q, max_off_diagonal, max_diagonal_error })
}

/// `F·U(1)·F†` as a dense matrix.
pub fn shift_in_fourier_basis<T: Real>(q: usize) -> Result<CMatrix<T>> {
    if q < 2 {
        return Err(invalid("shift check needs q ≥ 2"));
    }
    let f = qft_matrix::<T>(q, false);
    f.matmul(&gates::shift(q))?.matmul(&f.adjoint())
}
