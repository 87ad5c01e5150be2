//! Symmetric-key encryption schemes and their byte encodings.

pub mod bits;
pub mod lwe;
pub mod prf;
pub mod wire;

use std::fmt::Debug;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;

pub use bits::BitString;
pub use lwe::{lwe_skes, LweCipher, LweKey, LweSkes};
pub use prf::{
    periodized_prf_scheme, prf_scheme, KeyedFunction, PeriodizedPrf, PeriodizedPrfKey, PrfCipher, PrfFamily, PrfKey,
    PrfScheme,
};
pub use wire::Wire;

/// Human-readable descriptions of a scheme's key, message and cipher spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spaces {
    pub key: String,
    pub message: String,
    pub cipher: String,
}

/// `(KeyGen, Enc, Dec)` with `Dec_k(Enc_k(m)) = m`.
pub trait Scheme: Send + Sync {
    type Key: Clone + Debug + PartialEq + Wire + Send + Sync;
    type Message: Clone + Debug + PartialEq + Wire + Send + Sync;
    type Cipher: Clone + Debug + PartialEq + Wire + Send + Sync;

    fn name(&self) -> &str;
    fn spaces(&self) -> Spaces;
    fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Self::Key>;
    fn enc<R: Rng + ?Sized>(&self, key: &Self::Key, m: &Self::Message, rng: &mut R) -> Result<Self::Cipher>;
    fn dec(&self, key: &Self::Key, c: &Self::Cipher) -> Result<Self::Message>;
    /// A uniformly random message.
    fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Message;
}
