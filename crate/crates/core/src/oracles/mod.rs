//! Membership and example oracles, single-qubit noise channels, bit-flip code.

pub mod channels;
pub mod codes;
pub mod example;
pub mod membership;
pub mod spec;

pub use crate::modmath::ErrorDistribution;
pub use channels::{channel_apply, Channel};
pub use codes::{bitflip_code_cycle, repetition_monte_carlo, repetition_success_prob, CodeCycle};
pub use example::{
    example_state, example_state_capped, example_state_with_errors, ExampleSample, RealizedNoise, DEFAULT_EXAMPLE_CAP,
};
pub use membership::{membership_apply, membership_apply_inverse};
pub use spec::{NoiseModel, OracleSpec};
