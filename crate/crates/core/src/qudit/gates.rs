//! Standard gate matrices.
//!
//! Two-qubit gates take their targets as `[control, target]`, so the local index
//! is `control + 2·target`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use super::matrix::CMatrix;
use crate::scalar::Real;

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::of(re), T::of(im))
}

pub fn identity<T: Real>(q: usize) -> CMatrix<T> {
    CMatrix::identity(q)
}

pub fn pauli_x<T: Real>() -> CMatrix<T> {
    shift(2)
}

pub fn pauli_y<T: Real>() -> CMatrix<T> {
    CMatrix::from_rows(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).expect("2x2")
}

pub fn pauli_z<T: Real>() -> CMatrix<T> {
    clock(2)
}

pub fn hadamard<T: Real>() -> CMatrix<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_real(2, 2, &[h, h, h, -h]).expect("2x2")
}

/// Generalized shift `|x⟩ → |x + 1 mod q⟩`; equals Pauli-X for `q = 2`.
pub fn shift<T: Real>(q: usize) -> CMatrix<T> {
    CMatrix::from_fn(q, q, |r, col| if r == (col + 1) % q { Complex::one() } else { Complex::zero() })
}

/// Clock `|x⟩ → ω^x |x⟩`; equals Pauli-Z for `q = 2`.
pub fn clock<T: Real>(q: usize) -> CMatrix<T> {
    let diag: Vec<_> = (0..q).map(|x| T::root_of_unity(x as i64, q)).collect();
    CMatrix::diagonal(&diag)
}

pub fn cnot<T: Real>() -> CMatrix<T> {
    // |c t⟩ with local index c + 2t; flips t when c = 1, i.e. swaps 1 ↔ 3.
    let perm = [0usize, 3, 2, 1];
    CMatrix::from_fn(4, 4, |r, col| if perm[col] == r { Complex::one() } else { Complex::zero() })
}

pub fn phase<T: Real>(theta: f64) -> CMatrix<T> {
    CMatrix::diagonal(&[Complex::one(), c(theta.cos(), theta.sin())])
}

pub fn rx<T: Real>(theta: f64) -> CMatrix<T> {
    let (s, co) = (theta / 2.0).sin_cos();
    CMatrix::from_rows(2, 2, vec![c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]).expect("2x2")
}

pub fn ry<T: Real>(theta: f64) -> CMatrix<T> {
    let (s, co) = (theta / 2.0).sin_cos();
    CMatrix::from_real(2, 2, &[co, -s, s, co]).expect("2x2")
}

pub fn rz<T: Real>(theta: f64) -> CMatrix<T> {
    let (s, co) = (theta / 2.0).sin_cos();
    CMatrix::diagonal(&[c(co, -s), c(co, s)])
}

/// `Rz(a)·Ry(b)·Rz(c)` with angles uniform in `[0, 2π)`.
pub fn random_single_qubit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> CMatrix<T> {
    let tau = std::f64::consts::TAU;
    let (a, b, g) = (rng.gen::<f64>() * tau, rng.gen::<f64>() * tau, rng.gen::<f64>() * tau);
    let m = rz::<T>(a).matmul(&ry(b)).expect("2x2");
    m.matmul(&rz(g)).expect("2x2")
}
