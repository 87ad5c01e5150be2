use rand::Rng;
use serde::{Deserialize, Serialize};

use super::wire::{read_u32, take, write_u32, Wire};
use crate::error::{Error, Result};

/// Fixed-length bit string. Bit `i` lives in byte `i / 8` at position `i % 8`;
/// unused high bits of the last byte are always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitString {
    len: usize,
    bytes: Vec<u8>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self { len, bytes: vec![0; len.div_ceil(8)] }
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut bytes = vec![0; len.div_ceil(8)];
        rng.fill(bytes.as_mut_slice());
        Self::from_bytes_truncated(len, bytes)
    }

    /// Takes the first `len` bits of `bytes`, which must hold at least that many.
    pub fn from_bytes_truncated(len: usize, mut bytes: Vec<u8>) -> Self {
        bytes.truncate(len.div_ceil(8));
        assert!(bytes.len() * 8 >= len, "not enough bytes for {len} bits");
        if !len.is_multiple_of(8) {
            let last = bytes.len() - 1;
            bytes[last] &= (1u8 << (len % 8)) - 1;
        }
        Self { len, bytes }
    }

    /// Low `len` bits of `value` (`len ≤ 64`).
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        Self::from_bytes_truncated(len, value.to_le_bytes().to_vec())
    }

    /// Unsigned little-endian integer view (`len ≤ 64`).
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "bit string too long for u64");
        let mut buf = [0u8; 8];
        buf[..self.bytes.len()].copy_from_slice(&self.bytes);
        u64::from_le_bytes(buf)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.bytes[i / 8] >> (i % 8) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.bytes[i / 8] ^= 1 << (i % 8);
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { expected: self.len, actual: other.len });
        }
        let bytes = self.bytes.iter().zip(&other.bytes).map(|(a, b)| a ^ b).collect();
        Ok(Self { len: self.len, bytes })
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<usize> {
        Ok(self.xor(other)?.count_ones())
    }
}

impl Wire for BitString {
    fn write(&self, out: &mut Vec<u8>) {
        write_u32(out, self.len);
        out.extend_from_slice(&self.bytes);
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        let len = read_u32(input)?;
        let bytes = take(input, len.div_ceil(8))?.to_vec();
        if len % 8 != 0 && bytes[bytes.len() - 1] >> (len % 8) != 0 {
            return Err(Error::Decode("padding bits set".into()));
        }
        Ok(Self { len, bytes })
    }
}
