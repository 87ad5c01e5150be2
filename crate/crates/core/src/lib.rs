//! Qudit statevector simulation and a workbench for quantum learning algorithms,
//! toy symmetric encryption schemes and their security games.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the experiments use.
//!
//! ```
//! use quditbench::learn::{extended_bv, SecretSpec};
//! use quditbench::rng::trial_rng;
//!
//! let mut rng = trial_rng(42, 0);
//! let secret = SecretSpec::new(6, vec![1, 4, 5])?;
//! let result = extended_bv(&secret, &mut rng)?;
//! // φ(6)/6 = 1/3
//! assert!((result.exact_success_prob.unwrap() - 1.0 / 3.0).abs() < 1e-9);
//! # Ok::<(), quditbench::Error>(())
//! ```

pub mod error;
pub mod games;
pub mod learn;
pub mod modmath;
pub mod oracles;
pub mod qudit;
pub mod rng;
pub mod scalar;
pub mod schemes;

pub use error::{Error, Result};
pub use scalar::{precision_tol, Real, MATRIX_TOL, STATE_TOL};

pub type State = qudit::QuditState<f64>;
pub type Density = qudit::DensityMatrix<f64>;
pub type Unitary = qudit::UnitaryOp<f64>;
pub type Matrix = qudit::CMatrix<f64>;
