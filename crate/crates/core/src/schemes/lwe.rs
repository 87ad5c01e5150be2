//! Single-bit LWE symmetric encryption `Enc_k(b) = (a, ⟨a, k⟩ + b⌊q/2⌋ + e)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::wire::{read_u32, write_u32, Wire};
use super::{Scheme, Spaces};
use crate::error::{invalid, Error, Result};
use crate::modmath::ErrorDistribution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LweKey(pub Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LweCipher {
    pub a: Vec<u64>,
    pub c: u64,
}

fn write_vec(out: &mut Vec<u8>, v: &[u64]) {
    write_u32(out, v.len());
    for x in v {
        x.write(out);
    }
}

fn read_vec(input: &mut &[u8]) -> Result<Vec<u64>> {
    let n = read_u32(input)?;
    (0..n).map(|_| u64::read(input)).collect()
}

impl Wire for LweKey {
    fn write(&self, out: &mut Vec<u8>) {
        write_vec(out, &self.0);
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        Ok(Self(read_vec(input)?))
    }
}

impl Wire for LweCipher {
    fn write(&self, out: &mut Vec<u8>) {
        write_vec(out, &self.a);
        self.c.write(out);
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        Ok(Self { a: read_vec(input)?, c: u64::read(input)? })
    }
}

/// `min(d, q − d)` for `d = x mod q`.
pub fn centered_distance(x: u64, q: u64) -> u64 {
    let d = x % q;
    d.min(q - d)
}

/// Whether decryption is exact for every error with `|e| ≤ eta`.
///
/// Holds for all `eta ≤ ⌊q/4⌋` only when `q ≡ 2, 3 (mod 4)`; otherwise an
/// encrypted 1 with `e = −⌊q/4⌋` lands inside the 0-band.
pub fn decrypts_exactly(q: u64, eta: u64) -> bool {
    let (half, quarter) = (q / 2, q / 4);
    eta <= quarter && half.saturating_sub(eta) > quarter && centered_distance(half + eta, q) > quarter
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LweSkes {
    n: usize,
    q: u64,
    chi: ErrorDistribution,
    lossy: bool,
}

/// Builds the scheme; `lossy` is set when the error bound admits decryption
/// failures.
pub fn lwe_skes(n: usize, q: u64, chi: ErrorDistribution) -> Result<LweSkes> {
    if q < 5 || q > u32::MAX as u64 {
        return Err(invalid(format!("LWE modulus must lie in [5, 2^32), got {q}")));
    }
    if n == 0 {
        return Err(invalid("LWE dimension must be ≥ 1"));
    }
    chi.validate(q)?;
    Ok(LweSkes { n, q, chi, lossy: !decrypts_exactly(q, chi.eta()) })
}

impl LweSkes {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn chi(&self) -> &ErrorDistribution {
        &self.chi
    }

    pub fn is_lossy(&self) -> bool {
        self.lossy
    }

    fn inner(&self, a: &[u64], k: &[u64]) -> u64 {
        a.iter().zip(k).fold(0, |acc, (x, y)| (acc + x % self.q * (y % self.q)) % self.q)
    }

    /// Encryption with explicit randomness `a` and error `e`.
    pub fn encrypt_with(&self, key: &LweKey, b: u8, a: Vec<u64>, e: i64) -> Result<LweCipher> {
        self.check_key(key)?;
        if a.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: a.len() });
        }
        let q = self.q as i64;
        let shift = i64::from(b) * (q / 2) + e;
        let c = (self.inner(&a, &key.0) as i64 + shift).rem_euclid(q) as u64;
        Ok(LweCipher { a, c })
    }

    fn check_key(&self, key: &LweKey) -> Result<()> {
        if key.0.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: key.0.len() });
        }
        Ok(())
    }
}

impl Scheme for LweSkes {
    type Key = LweKey;
    type Message = u8;
    type Cipher = LweCipher;

    fn name(&self) -> &str {
        "lwe-skes"
    }

    fn spaces(&self) -> Spaces {
        let (n, q) = (self.n, self.q);
        Spaces { key: format!("Z_{q}^{n}"), message: "{0,1}".into(), cipher: format!("Z_{q}^{n} × Z_{q}") }
    }

    fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<LweKey> {
        Ok(LweKey((0..self.n).map(|_| rng.gen_range(0..self.q)).collect()))
    }

    fn enc<R: Rng + ?Sized>(&self, key: &LweKey, b: &u8, rng: &mut R) -> Result<LweCipher> {
        if *b > 1 {
            return Err(invalid(format!("LWE messages are single bits, got {b}")));
        }
        let a = (0..self.n).map(|_| rng.gen_range(0..self.q)).collect();
        let e = self.chi.sample_signed(rng);
        self.encrypt_with(key, *b, a, e)
    }

    /// 0 iff the centered distance of `c − ⟨a, k⟩` is at most `⌊q/4⌋`.
    fn dec(&self, key: &LweKey, cipher: &LweCipher) -> Result<u8> {
        self.check_key(key)?;
        if cipher.a.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: cipher.a.len() });
        }
        let d = (cipher.c % self.q + self.q - self.inner(&cipher.a, &key.0)) % self.q;
        Ok(u8::from(centered_distance(d, self.q) > self.q / 4))
    }

    fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> u8 {
        rng.gen_range(0..2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn scheme(eta: u64) -> LweSkes {
        lwe_skes(8, 23, ErrorDistribution::bounded_uniform(eta)).unwrap()
    }

    #[test]
    fn noiseless_zero_and_one() {
        let s = scheme(1);
        let mut rng = trial_rng(0, 0);
        let k = s.keygen(&mut rng).unwrap();
        let a: Vec<u64> = (0..8).map(|_| rng.gen_range(0..23)).collect();
        let c0 = s.encrypt_with(&k, 0, a.clone(), 0).unwrap();
        assert_eq!(c0.c, s.inner(&a, &k.0));
        assert_eq!(s.dec(&k, &c0).unwrap(), 0);
        let c1 = s.encrypt_with(&k, 1, a.clone(), 0).unwrap();
        let d = (c1.c + 23 - s.inner(&a, &k.0)) % 23;
        assert_eq!(centered_distance(d, 23), 11);
        assert_eq!(s.dec(&k, &c1).unwrap(), 1);
    }

    #[test]
    fn bounded_noise_never_fails() {
        for eta in [1, 5] {
            let s = scheme(eta);
            assert!(!s.is_lossy());
            let mut rng = trial_rng(1, eta);
            let k = s.keygen(&mut rng).unwrap();
            for _ in 0..10_000 {
                let b = s.random_message(&mut rng);
                let c = s.enc(&k, &b, &mut rng).unwrap();
                assert_eq!(s.dec(&k, &c).unwrap(), b);
            }
        }
    }

    #[test]
    fn exhaustive_error_case_analysis() {
        for q in 5..=64u64 {
            for eta in 0..=q / 4 {
                let s = lwe_skes(1, q, ErrorDistribution::bounded_uniform(eta)).unwrap();
                let k = LweKey(vec![3 % q]);
                let mut exact = true;
                for e in -(eta as i64)..=eta as i64 {
                    for b in 0..2 {
                        let c = s.encrypt_with(&k, b, vec![1], e).unwrap();
                        exact &= s.dec(&k, &c).unwrap() == b;
                    }
                }
                assert_eq!(exact, decrypts_exactly(q, eta), "q={q} eta={eta}");
            }
        }
        assert!(lwe_skes(2, 5, ErrorDistribution::bounded_uniform(1)).unwrap().is_lossy());
        assert!(lwe_skes(2, 23, ErrorDistribution::bounded_uniform(6)).unwrap().is_lossy());
    }

    #[test]
    fn parameters_are_checked() {
        assert!(lwe_skes(4, 4, ErrorDistribution::bounded_uniform(0)).is_err());
        assert!(lwe_skes(0, 23, ErrorDistribution::bounded_uniform(1)).is_err());
        let s = scheme(1);
        let k = LweKey(vec![0; 8]);
        assert!(s.enc(&k, &2, &mut trial_rng(0, 0)).is_err());
        assert!(s.dec(&LweKey(vec![0; 3]), &LweCipher { a: vec![0; 8], c: 0 }).is_err());
    }

    #[test]
    fn wire_layout() {
        let c = LweCipher { a: vec![1, 2], c: 7 };
        let bytes = c.to_bytes();
        assert_eq!(bytes.len(), 4 + 16 + 8);
        assert_eq!(&bytes[..4], &[2, 0, 0, 0]);
        assert_eq!(LweCipher::from_bytes(&bytes).unwrap(), c);
        let k = LweKey(vec![5, 6, 7]);
        assert_eq!(LweKey::from_bytes(&k.to_bytes()).unwrap(), k);
    }
}
