//! Length-prefixed little-endian byte layout.
//!
//! | type        | layout                                    |
//! |-------------|-------------------------------------------|
//! | `u8`        | 1 byte                                    |
//! | `u64`       | 8 bytes LE                                |
//! | `BitString` | `u32` bit length, then `⌈len/8⌉` bytes    |
//! | `PrfKey`    | `u32` byte length (32), then the key      |
//! | `PrfCipher` | `r` then `c`, both as `BitString`         |
//! | `PeriodizedPrfKey` | `PrfKey` then `p` as `u64`         |
//! | `LweKey`    | `u32` n, then n `u64` entries             |
//! | `LweCipher` | `u32` n, n `u64` entries of `a`, `u64` c  |

use crate::error::{Error, Result};

pub trait Wire: Sized {
    fn write(&self, out: &mut Vec<u8>);
    /// Reads one value from the front of `input`, advancing it.
    fn read(input: &mut &[u8]) -> Result<Self>;

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write(&mut out);
        out
    }

    /// Decodes a buffer that must hold exactly one value.
    fn from_bytes(mut bytes: &[u8]) -> Result<Self> {
        let v = Self::read(&mut bytes)?;
        if !bytes.is_empty() {
            return Err(Error::Decode(format!("{} trailing bytes", bytes.len())));
        }
        Ok(v)
    }
}

pub(crate) fn take<'a>(input: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if input.len() < n {
        return Err(Error::Decode(format!("need {n} bytes, have {}", input.len())));
    }
    let (head, tail) = input.split_at(n);
    *input = tail;
    Ok(head)
}

pub(crate) fn write_u32(out: &mut Vec<u8>, v: usize) {
    out.extend_from_slice(&(v as u32).to_le_bytes());
}

pub(crate) fn read_u32(input: &mut &[u8]) -> Result<usize> {
    let b = take(input, 4)?;
    Ok(u32::from_le_bytes(b.try_into().expect("4 bytes")) as usize)
}

impl Wire for u8 {
    fn write(&self, out: &mut Vec<u8>) {
        out.push(*self);
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        Ok(take(input, 1)?[0])
    }
}

impl Wire for u64 {
    fn write(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn read(input: &mut &[u8]) -> Result<Self> {
        Ok(u64::from_le_bytes(take(input, 8)?.try_into().expect("8 bytes")))
    }
}
