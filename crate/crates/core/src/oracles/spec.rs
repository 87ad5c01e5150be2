use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::modmath::ErrorDistribution;
use crate::qudit::state::{digits_of, register_size};

/// Noise attached to example oracles. Membership oracles are always noiseless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum NoiseModel {
    None,
    /// One global bit `e ~ Bernoulli(η)` added to every output (qubits only).
    BernoulliParity { eta: f64 },
    /// Independent `e_x ~ χ` per input `x`.
    IndependentAdditive { chi: ErrorDistribution },
}

type EvalFn = dyn Fn(usize) -> usize + Send + Sync;

#[derive(Clone)]
enum Repr {
    Table(Arc<Vec<usize>>),
    Closure(Arc<EvalFn>),
}

/// A total function `f: Z_q^n → Z_q^k` (k output digits, default 1) plus a noise
/// model.
///
/// Inputs and outputs are passed as little-endian base-`q` indices, so `f`
/// maps `0..q^n` into `0..q^k`. For `q = 2`, digitwise addition of the output is
/// XOR, which recovers bitstring-valued oracles.
#[derive(Clone)]
pub struct OracleSpec {
    n: usize,
    q: usize,
    out_digits: usize,
    f: Repr,
    noise: NoiseModel,
}

impl fmt::Debug for OracleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleSpec")
            .field("n", &self.n)
            .field("q", &self.q)
            .field("out_digits", &self.out_digits)
            .field("tabulated", &matches!(self.f, Repr::Table(_)))
            .field("noise", &self.noise)
            .finish()
    }
}

impl OracleSpec {
    /// Wraps a closure. The closure must return values in `0..q^out_digits`.
    pub fn from_fn(
        n: usize,
        q: usize,
        out_digits: usize,
        f: impl Fn(usize) -> usize + Send + Sync + 'static,
    ) -> Result<Self> {
        register_size(q, n.max(1))?;
        register_size(q, out_digits)?;
        Ok(Self { n, q, out_digits, f: Repr::Closure(Arc::new(f)), noise: NoiseModel::None })
    }

    pub fn from_table(n: usize, q: usize, out_digits: usize, table: Vec<usize>) -> Result<Self> {
        let inputs = q.pow(n as u32);
        let outputs = register_size(q, out_digits)?;
        if table.len() != inputs {
            return Err(invalid(format!("table has {} entries, expected {inputs}", table.len())));
        }
        if let Some(bad) = table.iter().find(|&&y| y >= outputs) {
            return Err(invalid(format!("table value {bad} outside 0..{outputs}")));
        }
        Ok(Self { n, q, out_digits, f: Repr::Table(Arc::new(table)), noise: NoiseModel::None })
    }

    /// `f_s(x) = ⟨s, x⟩ mod q`.
    pub fn inner_product(q: usize, secret: &[usize]) -> Result<Self> {
        if let Some(bad) = secret.iter().find(|&&s| s >= q) {
            return Err(invalid(format!("secret entry {bad} not in Z_{q}")));
        }
        let s = secret.to_vec();
        let n = s.len();
        Self::from_fn(n, q, 1, move |x| {
            digits_of(x, q, n).iter().zip(&s).map(|(a, b)| a * b).sum::<usize>() % q
        })
    }

    pub fn constant(n: usize, q: usize, value: usize) -> Result<Self> {
        if value >= q {
            return Err(invalid(format!("constant {value} not in Z_{q}")));
        }
        Self::from_fn(n, q, 1, move |_| value)
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Result<Self> {
        match noise {
            NoiseModel::None => {}
            NoiseModel::BernoulliParity { eta } => {
                if self.q != 2 || self.out_digits != 1 {
                    return Err(invalid("parity noise needs a single-qubit output register"));
                }
                if !(0.0..0.5).contains(&eta) {
                    return Err(invalid(format!("parity noise rate must lie in [0, 1/2), got {eta}")));
                }
            }
            NoiseModel::IndependentAdditive { chi } => chi.validate(self.q as u64)?,
        }
        self.noise = noise;
        Ok(self)
    }

    /// Materializes the dense table cache.
    pub fn tabulated(self) -> Self {
        match self.f {
            Repr::Table(_) => self,
            Repr::Closure(ref g) => {
                let table = (0..self.domain_size()).map(|x| g(x)).collect();
                Self { f: Repr::Table(Arc::new(table)), ..self }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn out_digits(&self) -> usize {
        self.out_digits
    }

    pub fn noise(&self) -> NoiseModel {
        self.noise
    }

    /// `q^n`.
    pub fn domain_size(&self) -> usize {
        self.q.pow(self.n as u32)
    }

    /// `q^k`.
    pub fn range_size(&self) -> usize {
        self.q.pow(self.out_digits as u32)
    }

    /// Total digits an oracle register needs: `n + k`.
    pub fn register_digits(&self) -> usize {
        self.n + self.out_digits
    }

    pub fn eval(&self, x: usize) -> usize {
        match &self.f {
            Repr::Table(t) => t[x],
            Repr::Closure(g) => g(x),
        }
    }
}

/// Digitwise `(a + b) mod q` of two little-endian indices with `k` digits.
pub(crate) fn add_digitwise(a: usize, b: usize, q: usize, k: usize) -> usize {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += ((a % q + b % q) % q) * place;
        a /= q;
        b /= q;
        place *= q;
    }
    out
}

/// Digitwise `(a − b) mod q`.
pub(crate) fn sub_digitwise(a: usize, b: usize, q: usize, k: usize) -> usize {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += ((a % q + q - b % q) % q) * place;
        a /= q;
        b /= q;
        place *= q;
    }
    out
}
