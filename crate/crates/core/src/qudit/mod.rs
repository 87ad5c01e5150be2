//! Dense qudit simulation: states, gates, QFT, density matrices.

pub mod density;
pub mod gates;
pub mod matrix;
pub mod qft;
pub mod state;

pub use density::{DensityMatrix, Validity};
pub use matrix::CMatrix;
pub use qft::{check_root_orthogonality, check_shift_diagonality, qft, qft_all, qft_matrix};
pub use state::{digits_of, index_of, trace_distance, Measurement, QuditState, UnitaryOp};
