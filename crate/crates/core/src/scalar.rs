//! Scalar abstraction for the simulator.
//!
//! All state-vector and density-matrix code is written against [`Real`], so the
//! same routines run in `f32` for cheap sweeps and `f64` for the exact checks.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point type usable as the real part of an amplitude: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Sum
    + NumAssign
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Real")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real always converts to f64")
    }

    /// `exp(2πi k / q)`.
    fn root_of_unity(k: i64, q: usize) -> Complex<Self> {
        let k = k.rem_euclid(q as i64);
        // Angle computed in f64 so that f32 roots do not accumulate error from
        // the reduction step.
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (q as f64);
        Complex::new(Self::of(theta.cos()), Self::of(theta.sin()))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Tolerance for state-level checks (normalization, trace).
pub const STATE_TOL: f64 = 1e-9;
/// Tolerance for matrix identities (unitarity, QFT algebra).
pub const MATRIX_TOL: f64 = 1e-10;

/// `base`, widened to what `T` can resolve over `dim` accumulated terms.
pub fn precision_tol<T: Real>(base: f64, dim: usize) -> f64 {
    base.max(16.0 * T::epsilon().as_f64() * dim as f64)
}
