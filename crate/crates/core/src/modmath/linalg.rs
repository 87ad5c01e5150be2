use rand::Rng;
use serde::{Deserialize, Serialize};

use super::number::{is_prime, mod_inverse};
use crate::error::{invalid, Error, Result};

/// Vector over `Z_q` with reduced entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZqVector {
    q: u64,
    entries: Vec<u64>,
}

/// Row-major matrix over `Z_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqMatrix {
    q: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ZqVector {
    /// Reduces every entry mod `q`.
    pub fn new(q: u64, entries: Vec<u64>) -> Result<Self> {
        if q < 2 {
            return Err(invalid(format!("modulus must be ≥ 2, got {q}")));
        }
        Ok(Self { q, entries: entries.into_iter().map(|e| e % q).collect() })
    }

    pub fn from_signed(q: u64, entries: &[i64]) -> Result<Self> {
        Self::new(q, entries.iter().map(|&e| e.rem_euclid(q as i64) as u64).collect())
    }

    pub fn zeros(q: u64, n: usize) -> Result<Self> {
        Self::new(q, vec![0; n])
    }

    pub fn random<R: Rng + ?Sized>(q: u64, n: usize, rng: &mut R) -> Result<Self> {
        Self::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn dot(&self, other: &[u64]) -> u64 {
        self.entries
            .iter()
            .zip(other)
            .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * (b % self.q) as u128) % self.q as u128) as u64
    }
}

impl ZqMatrix {
    pub fn new(q: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if q < 2 {
            return Err(invalid(format!("modulus must be ≥ 2, got {q}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: data.len() });
        }
        Ok(Self { q, rows, cols, data: data.into_iter().map(|e| e % q).collect() })
    }

    pub fn identity(q: u64, n: usize) -> Result<Self> {
        Self::new(q, n, n, (0..n * n).map(|i| u64::from(i / n == i % n)).collect())
    }

    pub fn random<R: Rng + ?Sized>(q: u64, rows: usize, cols: usize, rng: &mut R) -> Result<Self> {
        Self::new(q, rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..q)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &ZqVector) -> Result<ZqVector> {
        if v.len() != self.cols || v.q() != self.q {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: v.len() });
        }
        ZqVector::new(self.q, (0..self.rows).map(|r| v.dot(self.row(r))).collect())
    }

    /// Rank over the prime field `F_q`.
    pub fn rank(&self) -> Result<usize> {
        if self.q > u32::MAX as u64 {
            return Err(invalid("modulus must fit in 32 bits"));
        }
        let mut work = self.clone();
        let mut aug = vec![0; self.rows];
        Ok(reduce(&mut work, &mut aug)?.len())
    }
}

/// Row-reduces `a` (and the right-hand side `b` alongside it) in place;
/// returns pivot columns in order.
fn reduce(a: &mut ZqMatrix, b: &mut [u64]) -> Result<Vec<usize>> {
    let q = a.q;
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a.data[i * cols + c] != 0) else { continue };
        if p != r {
            for k in 0..cols {
                a.data.swap(p * cols + k, r * cols + k);
            }
            b.swap(p, r);
        }
        let inv = mod_inverse(a.data[r * cols + c], q)?;
        for k in 0..cols {
            a.data[r * cols + k] = a.data[r * cols + k] * inv % q;
        }
        b[r] = b[r] * inv % q;
        for i in 0..rows {
            let f = a.data[i * cols + c];
            if i == r || f == 0 {
                continue;
            }
            for k in 0..cols {
                let sub = f * a.data[r * cols + k] % q;
                a.data[i * cols + k] = (a.data[i * cols + k] + q - sub) % q;
            }
            b[i] = (b[i] + q - f * b[r] % q) % q;
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Solves `A·s = b` over `F_q` for prime `q`.
///
/// Requires full column rank; extra rows must be consistent.
pub fn gaussian_eliminate(a: &ZqMatrix, b: &ZqVector) -> Result<ZqVector> {
    if b.len() != a.rows || b.q() != a.q {
        return Err(Error::DimensionMismatch { expected: a.rows, actual: b.len() });
    }
    if a.q > u32::MAX as u64 {
        return Err(invalid("modulus must fit in 32 bits"));
    }
    let mut work = a.clone();
    let mut rhs = b.entries().to_vec();
    let pivots = reduce(&mut work, &mut rhs)?;
    if rhs[pivots.len()..].iter().any(|&x| x != 0) {
        return Err(Error::Inconsistent);
    }
    if pivots.len() < a.cols {
        return Err(Error::Underdetermined { rank: pivots.len(), unknowns: a.cols });
    }
    ZqVector::new(a.q, rhs[..a.cols].to_vec())
}
