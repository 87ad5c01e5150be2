//! Modular arithmetic, number theory, `F_q` linear algebra and samplers.

pub mod linalg;
pub mod number;
pub mod sampling;

pub use linalg::{gaussian_eliminate, ZqMatrix, ZqVector};
pub use number::{
    euler_product, gcd, independence_probability, is_prime, mod_inverse, prime_factors, rosser_schoenfeld_bound,
    sample_prime, totient, totient_ratio,
};
pub use sampling::{sample_error, ErrorDistribution};
