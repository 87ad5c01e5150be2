//! PRF-based encryption `Enc_k(m; r) = (r, f_k(r) ⊕ m)` and its periodized
//! variant.

use std::fmt::Debug;

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::wire::{read_u32, take, write_u32, Wire};
use super::{BitString, Scheme, Spaces};
use crate::error::{invalid, Error, Result};
use crate::modmath::sample_prime;

/// A keyed family `f_k: {0,1}^in → {0,1}^out`.
pub trait KeyedFunction: Send + Sync {
    type Key: Clone + Debug + PartialEq + Wire + Send + Sync;

    fn in_bits(&self) -> usize;
    fn out_bits(&self) -> usize;
    fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Self::Key>;
    fn eval(&self, key: &Self::Key, x: &BitString) -> Result<BitString>;
    fn key_space(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrfKey(pub [u8; 32]);

impl Wire for PrfKey {
    fn write(&self, out: &mut Vec<u8>) {
        write_u32(out, 32);
        out.extend_from_slice(&self.0);
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        let len = read_u32(input)?;
        if len != 32 {
            return Err(Error::Decode(format!("PRF key must be 32 bytes, got {len}")));
        }
        Ok(Self(take(input, 32)?.try_into().expect("32 bytes")))
    }
}

/// SHA-256 in counter mode over `key ‖ in_bits ‖ x ‖ counter`, truncated to
/// `out_bits`. Deterministic and fixed so transcripts reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrfFamily {
    in_bits: usize,
    out_bits: usize,
}

impl PrfFamily {
    pub fn new(in_bits: usize, out_bits: usize) -> Result<Self> {
        if in_bits == 0 || out_bits == 0 {
            return Err(invalid("PRF widths must be positive"));
        }
        Ok(Self { in_bits, out_bits })
    }
}

impl KeyedFunction for PrfFamily {
    type Key = PrfKey;

    fn in_bits(&self) -> usize {
        self.in_bits
    }

    fn out_bits(&self) -> usize {
        self.out_bits
    }

    fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<PrfKey> {
        Ok(PrfKey(rng.gen()))
    }

    fn eval(&self, key: &PrfKey, x: &BitString) -> Result<BitString> {
        if x.len() != self.in_bits {
            return Err(Error::LengthMismatch { expected: self.in_bits, actual: x.len() });
        }
        let blocks = self.out_bits.div_ceil(256);
        let mut out = Vec::with_capacity(blocks * 32);
        for counter in 0..blocks as u32 {
            let digest = Sha256::new()
                .chain_update(key.0)
                .chain_update((self.in_bits as u32).to_le_bytes())
                .chain_update(x.as_bytes())
                .chain_update(counter.to_le_bytes())
                .finalize();
            out.extend_from_slice(&digest);
        }
        Ok(BitString::from_bytes_truncated(self.out_bits, out))
    }

    fn key_space(&self) -> String {
        "{0,1}^256".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodizedPrfKey {
    pub prf: PrfKey,
    pub p: u64,
}

impl Wire for PeriodizedPrfKey {
    fn write(&self, out: &mut Vec<u8>) {
        self.prf.write(out);
        self.p.write(out);
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        Ok(Self { prf: PrfKey::read(input)?, p: u64::read(input)? })
    }
}

/// `f'_{k,p}(x) = f_k(x mod p)` on `2n + 3` bits, with `x` read as an unsigned
/// little-endian integer and `p` a prime in `[2^{n−1}, 2^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodizedPrf {
    n: usize,
    base: PrfFamily,
}

impl PeriodizedPrf {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=30).contains(&n) {
            return Err(invalid(format!("periodized PRF needs 2 ≤ n ≤ 30, got {n}")));
        }
        let width = 2 * n + 3;
        Ok(Self { n, base: PrfFamily::new(width, width)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        2 * self.n + 3
    }

    pub fn base(&self) -> &PrfFamily {
        &self.base
    }
}

impl KeyedFunction for PeriodizedPrf {
    type Key = PeriodizedPrfKey;

    fn in_bits(&self) -> usize {
        self.width()
    }

    fn out_bits(&self) -> usize {
        self.width()
    }

    fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<PeriodizedPrfKey> {
        let prf = self.base.keygen(rng)?;
        let p = sample_prime(self.n as u32, rng)?;
        Ok(PeriodizedPrfKey { prf, p })
    }

    fn eval(&self, key: &PeriodizedPrfKey, x: &BitString) -> Result<BitString> {
        if x.len() != self.width() {
            return Err(Error::LengthMismatch { expected: self.width(), actual: x.len() });
        }
        if key.p == 0 {
            return Err(invalid("period must be positive"));
        }
        self.base.eval(&key.prf, &BitString::from_u64(x.to_u64() % key.p, self.width()))
    }

    fn key_space(&self) -> String {
        format!("{{0,1}}^256 × Primes[2^{}, 2^{})", self.n - 1, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrfCipher {
    pub r: BitString,
    pub c: BitString,
}

impl Wire for PrfCipher {
    fn write(&self, out: &mut Vec<u8>) {
        self.r.write(out);
        self.c.write(out);
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        Ok(Self { r: BitString::read(input)?, c: BitString::read(input)? })
    }
}

/// `Enc_k(m; r) = (r, f_k(r) ⊕ m)` with fresh uniform `r` per call.
#[derive(Debug, Clone)]
pub struct PrfScheme<F> {
    name: String,
    f: F,
}

impl<F: KeyedFunction> PrfScheme<F> {
    pub fn function(&self) -> &F {
        &self.f
    }
}

pub fn prf_scheme(family: PrfFamily) -> PrfScheme<PrfFamily> {
    PrfScheme { name: "prf".into(), f: family }
}

/// PRF scheme over `f'_{k,p}` with `(2n + 3)`-bit messages and randomness.
pub fn periodized_prf_scheme(n: usize) -> Result<PrfScheme<PeriodizedPrf>> {
    Ok(PrfScheme { name: "periodized-prf".into(), f: PeriodizedPrf::new(n)? })
}

impl<F: KeyedFunction> Scheme for PrfScheme<F> {
    type Key = F::Key;
    type Message = BitString;
    type Cipher = PrfCipher;

    fn name(&self) -> &str {
        &self.name
    }

    fn spaces(&self) -> Spaces {
        let (i, o) = (self.f.in_bits(), self.f.out_bits());
        Spaces { key: self.f.key_space(), message: format!("{{0,1}}^{o}"), cipher: format!("{{0,1}}^{i} × {{0,1}}^{o}") }
    }

    fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<F::Key> {
        self.f.keygen(rng)
    }

    fn enc<R: Rng + ?Sized>(&self, key: &F::Key, m: &BitString, rng: &mut R) -> Result<PrfCipher> {
        if m.len() != self.f.out_bits() {
            return Err(Error::LengthMismatch { expected: self.f.out_bits(), actual: m.len() });
        }
        let r = BitString::random(self.f.in_bits(), rng);
        let c = self.f.eval(key, &r)?.xor(m)?;
        Ok(PrfCipher { r, c })
    }

    fn dec(&self, key: &F::Key, cipher: &PrfCipher) -> Result<BitString> {
        self.f.eval(key, &cipher.r)?.xor(&cipher.c)
    }

    fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> BitString {
        BitString::random(self.f.out_bits(), rng)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::rng::trial_rng;

    #[test]
    fn prf_is_deterministic_with_exact_length() {
        let fam = PrfFamily::new(40, 300).unwrap();
        let mut rng = trial_rng(0, 0);
        let k = fam.keygen(&mut rng).unwrap();
        let x = BitString::random(40, &mut rng);
        let y = fam.eval(&k, &x).unwrap();
        assert_eq!(y.len(), 300);
        assert_eq!(y, fam.eval(&k, &x).unwrap());
        assert!(fam.eval(&k, &BitString::zeros(41)).is_err());
    }

    #[test]
    fn avalanche_changes_a_quarter_of_bits() {
        let fam = PrfFamily::new(32, 32).unwrap();
        let mut rng = trial_rng(1, 0);
        let k = fam.keygen(&mut rng).unwrap();
        let mut changed = 0;
        let samples = 1000;
        for _ in 0..samples {
            let x = BitString::random(32, &mut rng);
            let mut x2 = x.clone();
            x2.flip(rng.gen_range(0..32));
            changed += fam.eval(&k, &x).unwrap().hamming_distance(&fam.eval(&k, &x2).unwrap()).unwrap();
        }
        assert!(changed as f64 / (samples * 32) as f64 >= 0.25);
    }

    #[test]
    fn round_trip_and_zero_message() {
        let scheme = prf_scheme(PrfFamily::new(32, 32).unwrap());
        let mut rng = trial_rng(2, 0);
        for _ in 0..1000 {
            let k = scheme.keygen(&mut rng).unwrap();
            let m = scheme.random_message(&mut rng);
            let c = scheme.enc(&k, &m, &mut rng).unwrap();
            assert_eq!(scheme.dec(&k, &c).unwrap(), m);
        }
        let k = scheme.keygen(&mut rng).unwrap();
        let c = scheme.enc(&k, &BitString::zeros(32), &mut rng).unwrap();
        assert_eq!(c.c, scheme.function().eval(&k, &c.r).unwrap());
        assert!(scheme.enc(&k, &BitString::zeros(31), &mut rng).is_err());
    }

    #[test]
    fn randomness_never_repeats() {
        let scheme = prf_scheme(PrfFamily::new(32, 32).unwrap());
        let mut rng = trial_rng(3, 0);
        let k = scheme.keygen(&mut rng).unwrap();
        let m = BitString::zeros(32);
        let rs: HashSet<_> = (0..1000).map(|_| scheme.enc(&k, &m, &mut rng).unwrap().r).collect();
        assert_eq!(rs.len(), 1000);
    }

    #[test]
    fn periodized_function_has_hidden_period() {
        let f = PeriodizedPrf::new(4).unwrap();
        let mut rng = trial_rng(4, 0);
        let key = PeriodizedPrfKey { prf: f.base().keygen(&mut rng).unwrap(), p: 13 };
        let w = f.width();
        let at = |x: u64| f.eval(&key, &BitString::from_u64(x, w)).unwrap();
        let base = |x: u64| f.base().eval(&key.prf, &BitString::from_u64(x, w)).unwrap();
        for x in 0..13 {
            assert_eq!(at(x), base(x));
        }
        assert_eq!(at(13), base(0));
        for _ in 0..1000 {
            let x = rng.gen_range(0..(1u64 << w) - 13);
            assert_eq!(at(x), at(x + 13));
        }
    }

    #[test]
    fn periodized_keygen_and_round_trip() {
        let scheme = periodized_prf_scheme(4).unwrap();
        let mut rng = trial_rng(5, 0);
        for _ in 0..1000 {
            let k = scheme.keygen(&mut rng).unwrap();
            assert!(k.p == 11 || k.p == 13);
            let m = scheme.random_message(&mut rng);
            assert_eq!(m.len(), 11);
            let c = scheme.enc(&k, &m, &mut rng).unwrap();
            assert_eq!(scheme.dec(&k, &c).unwrap(), m);
        }
        assert!(periodized_prf_scheme(1).is_err());
    }

    #[test]
    fn keys_and_ciphers_round_trip_on_the_wire() {
        let scheme = periodized_prf_scheme(5).unwrap();
        let mut rng = trial_rng(6, 0);
        let k = scheme.keygen(&mut rng).unwrap();
        assert_eq!(PeriodizedPrfKey::from_bytes(&k.to_bytes()).unwrap(), k);
        let c = scheme.enc(&k, &scheme.random_message(&mut rng), &mut rng).unwrap();
        assert_eq!(PrfCipher::from_bytes(&c.to_bytes()).unwrap(), c);
        assert_eq!(k.to_bytes().len(), 4 + 32 + 8);
    }
}
