//! Security games, the decryption-oracle key-recovery attack and the
//! relabeling experiments.

pub mod adversaries;
pub mod ind;
pub mod keyrec;
pub mod relabel;
pub mod stats;

pub use adversaries::{ChallengeDecryptor, RandomGuess, ReplayAdversary};
pub use ind::{play_trial, run_ind_game, Adversary, GameTranscript, IndReport, Mode, Oracles, Phase, QueryRecord};
pub use keyrec::{estimate_coordinate, key_recovery_attack, key_recovery_budget, KeyEstimator, KeyRecoveryAdversary};
pub use relabel::{
    classical_relabeling, classical_win_formula, quantum_relabeling_tracedist, relabel_trace_distance,
    ClassicalMode, ClassicalRelabelReport, QuantumRelabelReport, QueryCircuit, RelabelConfig,
};
pub use stats::{hoeffding_budget, wilson_99, wilson_interval, Interval};
