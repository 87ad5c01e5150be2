//! Indistinguishability games with chosen-plaintext (and, in CCA1 mode,
//! pre-challenge decryption) access.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{wilson_99, Interval};
use crate::error::{Error, Result};
use crate::rng::{sub_rng, TrialRng};
use crate::schemes::{Scheme, Wire};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cpa,
    Cca1,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Cpa => "cpa",
            Self::Cca1 => "cca1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    PreChallenge,
    PostChallenge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Enc,
    Dec,
}

/// A run of consecutive identical queries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub phase: Phase,
    pub oracle: OracleKind,
    pub count: usize,
    pub denied: bool,
}

fn log_query(log: &mut Vec<QueryRecord>, phase: Phase, oracle: OracleKind, denied: bool) {
    match log.last_mut() {
        Some(r) if r.phase == phase && r.oracle == oracle && r.denied == denied => r.count += 1,
        _ => log.push(QueryRecord { phase, oracle, count: 1, denied }),
    }
}

/// The challenger's oracles as seen by the adversary in one phase.
pub struct Oracles<'a, S: Scheme> {
    scheme: &'a S,
    key: &'a S::Key,
    mode: Mode,
    phase: Phase,
    rng: &'a mut TrialRng,
    log: &'a mut Vec<QueryRecord>,
}

impl<S: Scheme> Oracles<'_, S> {
    pub fn scheme(&self) -> &S {
        self.scheme
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Decryption is available only before the challenge in CCA1 mode.
    pub fn can_decrypt(&self) -> bool {
        self.mode == Mode::Cca1 && self.phase == Phase::PreChallenge
    }

    pub fn enc(&mut self, m: &S::Message) -> Result<S::Cipher> {
        log_query(self.log, self.phase, OracleKind::Enc, false);
        self.scheme.enc(self.key, m, self.rng)
    }

    pub fn dec(&mut self, c: &S::Cipher) -> Result<S::Message> {
        if !self.can_decrypt() {
            log_query(self.log, self.phase, OracleKind::Dec, true);
            let why = match self.mode {
                Mode::Cpa => "no decryption oracle in the CPA game",
                Mode::Cca1 => "decryption oracle closed after the challenge",
            };
            return Err(Error::AccessViolation(why.into()));
        }
        log_query(self.log, self.phase, OracleKind::Dec, false);
        self.scheme.dec(self.key, c)
    }
}

/// A two-phase adversary. A fresh instance plays each trial.
pub trait Adversary<S: Scheme> {
    fn name(&self) -> String;
    /// Pre-challenge phase; returns `(m₀, m₁)`.
    fn choose(&mut self, oracles: &mut Oracles<'_, S>, rng: &mut TrialRng) -> Result<(S::Message, S::Message)>;
    /// Post-challenge phase; returns the guess `b'`.
    fn guess(&mut self, challenge: &S::Cipher, oracles: &mut Oracles<'_, S>, rng: &mut TrialRng) -> Result<u8>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Challenge {
    /// Messages and cipher in their wire encoding, hex.
    pub m0: String,
    pub m1: String,
    pub b: u8,
    pub cipher: String,
}

/// Record of one game. Serialized as one JSON object per line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub seed: u64,
    pub trial: u64,
    pub scheme: String,
    pub adversary: String,
    pub mode: Mode,
    pub queries: Vec<QueryRecord>,
    pub challenge: Option<Challenge>,
    pub guess: Option<u8>,
    pub win: bool,
    /// Reason the trial was stopped, if the adversary broke the access rules.
    pub aborted: Option<String>,
}

impl GameTranscript {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndReport {
    pub scheme: String,
    pub adversary: String,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    pub wins: usize,
    pub aborted: usize,
    /// Wins over all trials; aborted trials count as losses.
    pub win_rate: f64,
    pub ci99: Interval,
    #[serde(skip)]
    pub transcripts: Vec<GameTranscript>,
}

impl IndReport {
    pub fn transcripts_jsonl(&self) -> String {
        self.transcripts.iter().map(|t| t.to_json_line() + "\n").collect()
    }
}

enum Stop {
    Abort(String),
    Fail(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::AccessViolation(why) => Stop::Abort(why),
            other => Stop::Fail(other),
        }
    }
}

/// Plays one trial. Challenger randomness comes from lane 0 of the trial
/// stream, adversary randomness from lane 1.
pub fn play_trial<S, A>(scheme: &S, mut adversary: A, mode: Mode, seed: u64, trial: u64) -> Result<GameTranscript>
where
    S: Scheme,
    A: Adversary<S>,
{
    let mut challenger = sub_rng(seed, trial, 0);
    let mut adv_rng = sub_rng(seed, trial, 1);
    let mut t = GameTranscript {
        seed,
        trial,
        scheme: scheme.name().to_string(),
        adversary: adversary.name(),
        mode,
        queries: Vec::new(),
        challenge: None,
        guess: None,
        win: false,
        aborted: None,
    };
    let key = scheme.keygen(&mut challenger)?;
    let b: u8 = challenger.gen_range(0..2);
    let outcome = (|| -> std::result::Result<(), Stop> {
        let (m0, m1) = {
            let mut o = Oracles {
                scheme,
                key: &key,
                mode,
                phase: Phase::PreChallenge,
                rng: &mut challenger,
                log: &mut t.queries,
            };
            adversary.choose(&mut o, &mut adv_rng)?
        };
        let cipher = scheme.enc(&key, if b == 0 { &m0 } else { &m1 }, &mut challenger)?;
        t.challenge = Some(Challenge {
            m0: hex::encode(m0.to_bytes()),
            m1: hex::encode(m1.to_bytes()),
            b,
            cipher: hex::encode(cipher.to_bytes()),
        });
        let mut o = Oracles {
            scheme,
            key: &key,
            mode,
            phase: Phase::PostChallenge,
            rng: &mut challenger,
            log: &mut t.queries,
        };
        let guess = adversary.guess(&cipher, &mut o, &mut adv_rng)?;
        t.guess = Some(guess);
        t.win = guess == b;
        Ok(())
    })();
    match outcome {
        Ok(()) => Ok(t),
        Err(Stop::Abort(why)) => {
            t.aborted = Some(why);
            Ok(t)
        }
        Err(Stop::Fail(e)) => Err(e),
    }
}

/// Runs `trials` independent games in parallel; transcripts come back in trial
/// order and are identical for every thread count.
pub fn run_ind_game<S, A, F>(scheme: &S, make_adversary: F, mode: Mode, trials: usize, seed: u64) -> Result<IndReport>
where
    S: Scheme,
    A: Adversary<S>,
    F: Fn() -> A + Sync,
{
    let transcripts = (0..trials as u64)
        .into_par_iter()
        .map(|i| play_trial(scheme, make_adversary(), mode, seed, i))
        .collect::<Result<Vec<_>>>()?;
    let wins = transcripts.iter().filter(|t| t.win).count();
    let aborted = transcripts.iter().filter(|t| t.aborted.is_some()).count();
    let adversary = transcripts.first().map(|t| t.adversary.clone()).unwrap_or_else(|| make_adversary().name());
    Ok(IndReport {
        scheme: scheme.name().to_string(),
        adversary,
        mode,
        seed,
        trials,
        wins,
        aborted,
        win_rate: if trials == 0 { 0.0 } else { wins as f64 / trials as f64 },
        ci99: wilson_99(wins, trials),
        transcripts,
    })
}
