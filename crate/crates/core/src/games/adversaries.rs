//! Generic adversaries usable against any scheme.

use std::marker::PhantomData;

use rand::Rng;

use super::ind::{Adversary, Oracles};
use crate::error::Result;
use crate::rng::TrialRng;
use crate::schemes::Scheme;

fn distinct_pair<S: Scheme>(scheme: &S, rng: &mut TrialRng) -> (S::Message, S::Message) {
    let m0 = scheme.random_message(rng);
    let mut m1 = scheme.random_message(rng);
    for _ in 0..64 {
        if m1 != m0 {
            break;
        }
        m1 = scheme.random_message(rng);
    }
    (m0, m1)
}

/// Ignores everything and flips a coin.
pub struct RandomGuess<S>(PhantomData<fn() -> S>);

impl<S> Default for RandomGuess<S> {
    fn default() -> Self {
        Self(PhantomData)
    }
}

impl<S: Scheme> Adversary<S> for RandomGuess<S> {
    fn name(&self) -> String {
        "random-guess".into()
    }

    fn choose(&mut self, o: &mut Oracles<'_, S>, rng: &mut TrialRng) -> Result<(S::Message, S::Message)> {
        Ok(distinct_pair(o.scheme(), rng))
    }

    fn guess(&mut self, _: &S::Cipher, _: &mut Oracles<'_, S>, rng: &mut TrialRng) -> Result<u8> {
        Ok(rng.gen_range(0..2))
    }
}

/// Re-encrypts both challenge messages and looks for a matching cipher; falls
/// back to a coin flip.
pub struct ReplayAdversary<S: Scheme> {
    pair: Option<(S::Message, S::Message)>,
}

impl<S: Scheme> Default for ReplayAdversary<S> {
    fn default() -> Self {
        Self { pair: None }
    }
}

impl<S: Scheme> Adversary<S> for ReplayAdversary<S> {
    fn name(&self) -> String {
        "replay".into()
    }

    fn choose(&mut self, o: &mut Oracles<'_, S>, rng: &mut TrialRng) -> Result<(S::Message, S::Message)> {
        let pair = distinct_pair(o.scheme(), rng);
        self.pair = Some(pair.clone());
        Ok(pair)
    }

    fn guess(&mut self, challenge: &S::Cipher, o: &mut Oracles<'_, S>, rng: &mut TrialRng) -> Result<u8> {
        let (m0, m1) = self.pair.clone().expect("choose runs first");
        if o.enc(&m0)? == *challenge {
            return Ok(0);
        }
        if o.enc(&m1)? == *challenge {
            return Ok(1);
        }
        Ok(rng.gen_range(0..2))
    }
}

/// Tries to decrypt the challenge itself. Only legal in a CCA2 game, so the
/// harness must abort every trial.
pub struct ChallengeDecryptor<S: Scheme> {
    m0: Option<S::Message>,
}

impl<S: Scheme> Default for ChallengeDecryptor<S> {
    fn default() -> Self {
        Self { m0: None }
    }
}

impl<S: Scheme> Adversary<S> for ChallengeDecryptor<S> {
    fn name(&self) -> String {
        "challenge-decryptor".into()
    }

    fn choose(&mut self, o: &mut Oracles<'_, S>, rng: &mut TrialRng) -> Result<(S::Message, S::Message)> {
        let pair = distinct_pair(o.scheme(), rng);
        self.m0 = Some(pair.0.clone());
        Ok(pair)
    }

    fn guess(&mut self, challenge: &S::Cipher, o: &mut Oracles<'_, S>, _: &mut TrialRng) -> Result<u8> {
        let m = o.dec(challenge)?;
        Ok(u8::from(Some(m) != self.m0))
    }
}
