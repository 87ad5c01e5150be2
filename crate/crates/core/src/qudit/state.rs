use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use super::matrix::CMatrix;
use crate::error::{invalid, Error, Result};
use crate::scalar::{precision_tol, Real, STATE_TOL};

/// Pure state of `m` qudits of dimension `q`.
///
/// Basis index encoding is little-endian base `q`: the digit vector
/// `(x_0, …, x_{m−1})` maps to `Σ x_j q^j`, so digit 0 is least significant.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState<T> {
    q: usize,
    m: usize,
    amps: Vec<Complex<T>>,
}

/// Target digits together with a `q^k × q^k` matrix acting on them.
///
/// The matrix is indexed in the same little-endian convention restricted to the
/// targets: local index `Σ_j x_{targets[j]} q^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOp<T> {
    targets: Vec<usize>,
    matrix: CMatrix<T>,
}

/// Result of a full computational-basis measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measurement {
    pub index: usize,
    pub digits: Vec<usize>,
}

pub fn register_size(q: usize, m: usize) -> Result<usize> {
    if q < 2 {
        return Err(invalid(format!("qudit dimension must be ≥ 2, got {q}")));
    }
    if m == 0 {
        return Err(invalid("register must hold at least one qudit"));
    }
    let mut size: usize = 1;
    for _ in 0..m {
        size = size
            .checked_mul(q)
            .filter(|&s| s <= 1 << 26)
            .ok_or_else(|| invalid(format!("register {q}^{m} exceeds dense simulation limits")))?;
    }
    Ok(size)
}

/// Little-endian digits of `index` in base `q`.
pub fn digits_of(index: usize, q: usize, m: usize) -> Vec<usize> {
    let mut rest = index;
    (0..m)
        .map(|_| {
            let d = rest % q;
            rest /= q;
            d
        })
        .collect()
}

/// Inverse of [`digits_of`]. Digits must already be reduced mod `q`.
pub fn index_of(digits: &[usize], q: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * q + d)
}

impl<T: Real> UnitaryOp<T> {
    pub fn new(targets: Vec<usize>, matrix: CMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), actual: matrix.cols() });
        }
        let mut sorted = targets.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != targets.len() || targets.is_empty() {
            return Err(invalid("unitary targets must be distinct and non-empty"));
        }
        Ok(Self { targets, matrix })
    }

    pub fn single(target: usize, matrix: CMatrix<T>) -> Result<Self> {
        Self::new(vec![target], matrix)
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn check_unitary(&self) -> Result<()> {
        let deviation = self.matrix.unitarity_deviation().as_f64();
        if deviation > precision_tol::<T>(STATE_TOL, self.matrix.rows()) {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(())
    }
}

impl<T: Real> QuditState<T> {
    /// `|0…0⟩`.
    pub fn zero(q: usize, m: usize) -> Result<Self> {
        Self::basis_index(q, m, 0)
    }

    pub fn basis_index(q: usize, m: usize, index: usize) -> Result<Self> {
        let size = register_size(q, m)?;
        if index >= size {
            return Err(Error::IndexOutOfRange { index, digits: size });
        }
        let mut amps = vec![Complex::zero(); size];
        amps[index] = Complex::one();
        Ok(Self { q, m, amps })
    }

    /// Basis state `|x_0 x_1 … x_{m−1}⟩` given little-endian digits.
    pub fn basis(q: usize, digits: &[usize]) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d >= q) {
            return Err(invalid(format!("digit {bad} not in Z_{q}")));
        }
        Self::basis_index(q, digits.len(), index_of(digits, q))
    }

    /// Takes amplitudes as given; see [`QuditState::normalized`].
    pub fn from_amplitudes(q: usize, m: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        let size = register_size(q, m)?;
        if amps.len() != size {
            return Err(Error::DimensionMismatch { expected: size, actual: amps.len() });
        }
        Ok(Self { q, m, amps })
    }

    /// Uniform superposition over all `q^m` basis states.
    pub fn uniform(q: usize, m: usize) -> Result<Self> {
        let size = register_size(q, m)?;
        let a = T::one() / T::of(size as f64).sqrt();
        Ok(Self { q, m, amps: vec![Complex::new(a, T::zero()); size] })
    }

    /// Haar-like random state: i.i.d. complex Gaussian amplitudes, normalized.
    pub fn random<R: Rng + ?Sized>(q: usize, m: usize, rng: &mut R) -> Result<Self> {
        use rand_distr::{Distribution, StandardNormal};
        let size = register_size(q, m)?;
        let amps = (0..size)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex::new(T::of(re), T::of(im))
            })
            .collect();
        Self { q, m, amps }.normalized()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_digits(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, digits: &[usize]) -> Complex<T> {
        self.amps[index_of(digits, self.q)]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == T::zero() {
            return Err(Error::NotNormalized { norm_sqr: 0.0 });
        }
        for a in &mut self.amps {
            *a /= n;
        }
        Ok(self)
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        let n = self.norm_sqr().as_f64();
        let tol = precision_tol::<T>(STATE_TOL, self.dim());
        if (n - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        Ok(())
    }

    /// Tensor product `self ⊗ other`, with `self` occupying the low digits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::DimensionMismatch { expected: self.q, actual: other.q });
        }
        let low = self.dim();
        let mut amps = Vec::with_capacity(low * other.dim());
        for &hi in &other.amps {
            amps.extend(self.amps.iter().map(|&lo| lo * hi));
        }
        Self::from_amplitudes(self.q, self.m + other.m, amps)
    }

    fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for &t in targets {
            if t >= self.m {
                return Err(Error::IndexOutOfRange { index: t, digits: self.m });
            }
        }
        Ok(())
    }

    /// Applies `op` to its target digits in place.
    ///
    /// In debug builds the matrix is also checked for unitarity.
    pub fn apply(&mut self, op: &UnitaryOp<T>) -> Result<()> {
        self.check_targets(op.targets())?;
        let k = op.targets().len();
        let local = self.q.pow(k as u32);
        if op.matrix().rows() != local {
            return Err(Error::DimensionMismatch { expected: local, actual: op.matrix().rows() });
        }
        if cfg!(debug_assertions) {
            op.check_unitary()?;
        }
        let strides: Vec<usize> = op.targets().iter().map(|&t| self.q.pow(t as u32)).collect();
        // Offsets of every local basis state relative to the base index.
        let offsets: Vec<usize> = (0..local)
            .map(|l| digits_of(l, self.q, k).iter().zip(&strides).map(|(d, s)| d * s).sum())
            .collect();
        let mut gathered = vec![Complex::<T>::zero(); local];
        let matrix = op.matrix();
        for base in 0..self.dim() {
            // Visit each block once, from the member whose target digits are all zero.
            if strides.iter().any(|&s| (base / s) % self.q != 0) {
                continue;
            }
            for (slot, &off) in gathered.iter_mut().zip(&offsets) {
                *slot = self.amps[base + off];
            }
            for (r, &off) in offsets.iter().enumerate() {
                let mut acc = Complex::zero();
                for (c, &g) in gathered.iter().enumerate() {
                    acc += matrix[(r, c)] * g;
                }
                self.amps[base + off] = acc;
            }
        }
        Ok(())
    }

    /// By-value form of [`QuditState::apply`].
    pub fn apply_unitary(mut self, op: &UnitaryOp<T>) -> Result<Self> {
        self.apply(op)?;
        Ok(self)
    }

    /// Applies a basis permutation `|i⟩ → |perm(i)⟩`. `perm` must be a bijection
    /// on `0..dim`; this is checked.
    pub fn apply_permutation(&mut self, perm: impl Fn(usize) -> usize) -> Result<()> {
        let mut out = vec![Complex::zero(); self.dim()];
        let mut hit = vec![false; self.dim()];
        for (i, &a) in self.amps.iter().enumerate() {
            let j = perm(i);
            if j >= out.len() || hit[j] {
                return Err(invalid("basis map is not a permutation"));
            }
            hit[j] = true;
            out[j] = a;
        }
        self.amps = out;
        Ok(())
    }

    /// Multiplies each amplitude by `phase(i)`; the caller guarantees unit modulus.
    pub fn apply_diagonal(&mut self, phase: impl Fn(usize) -> Complex<T>) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= phase(i);
        }
    }

    /// `|amps[x]|²` for every basis index.
    pub fn exact_distribution(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Samples a full computational-basis outcome and collapses the state onto it.
    pub fn measure_all<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Measurement> {
        self.ensure_normalized()?;
        let u: f64 = rng.gen::<f64>() * self.norm_sqr().as_f64();
        let mut acc = 0.0;
        let mut index = None;
        let mut last_nonzero = 0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr().as_f64();
            if p > 0.0 {
                last_nonzero = i;
            }
            acc += p;
            if u < acc {
                index = Some(i);
                break;
            }
        }
        // Rounding can leave u marginally above the cumulative sum.
        let index = index.unwrap_or(last_nonzero);
        self.amps.iter_mut().for_each(|a| *a = Complex::zero());
        self.amps[index] = Complex::one();
        Ok(Measurement { index, digits: digits_of(index, self.q, self.m) })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.q != other.q || self.m != other.m {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: other.dim() });
        }
        Ok(self.amps.iter().zip(&other.amps).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Pure-state trace distance `√(1 − |⟨a|b⟩|²)`.
    pub fn trace_distance(&self, other: &Self) -> Result<T> {
        let overlap = self.inner(other)?.norm_sqr();
        Ok((T::one() - overlap).max(T::zero()).sqrt())
    }

    /// Largest entrywise amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: other.dim() });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max))
    }
}

/// Free-function form used by the learners.
pub fn trace_distance<T: Real>(a: &QuditState<T>, b: &QuditState<T>) -> Result<T> {
    a.trace_distance(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::gates;
    use crate::rng::trial_rng;

    fn h0() -> QuditState<f64> {
        QuditState::zero(2, 1).unwrap().apply_unitary(&UnitaryOp::single(0, gates::hadamard()).unwrap()).unwrap()
    }

    #[test]
    fn pauli_x_flips_zero() {
        let s = QuditState::<f64>::zero(2, 1).unwrap().apply_unitary(&UnitaryOp::single(0, gates::pauli_x()).unwrap()).unwrap();
        assert_eq!(s, QuditState::basis(2, &[1]).unwrap());
    }

    #[test]
    fn hadamard_gives_even_split() {
        let p = h0().exact_distribution();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn epr_pair_from_h_then_cnot() {
        let mut s = QuditState::<f64>::zero(2, 2).unwrap();
        s.apply(&UnitaryOp::single(0, gates::hadamard()).unwrap()).unwrap();
        s.apply(&UnitaryOp::new(vec![0, 1], gates::cnot()).unwrap()).unwrap();
        let p = s.exact_distribution();
        assert!((p[0] - 0.5).abs() < 1e-12);
        assert!((p[3] - 0.5).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12 && p[2].abs() < 1e-12);
        let mut rng = trial_rng(1, 0);
        for _ in 0..200 {
            let m = s.clone().measure_all(&mut rng).unwrap();
            assert!(m.digits == vec![0, 0] || m.digits == vec![1, 1]);
        }
    }

    #[test]
    fn basis_state_measures_deterministically() {
        let mut s = QuditState::<f64>::basis(2, &[1]).unwrap();
        let m = s.measure_all(&mut trial_rng(0, 0)).unwrap();
        assert_eq!(m.digits, vec![1]);
        assert_eq!(s, QuditState::basis(2, &[1]).unwrap());
    }

    #[test]
    fn hadamard_shot_frequency_within_three_sigma() {
        let mut rng = trial_rng(42, 0);
        let shots = 10_000;
        let zeros = (0..shots).filter(|_| h0().measure_all(&mut rng).unwrap().index == 0).count();
        let f = zeros as f64 / shots as f64;
        assert!((0.47..=0.53).contains(&f), "frequency {f}");
    }

    #[test]
    fn unnormalized_state_refuses_measurement() {
        let s = QuditState::<f64>::from_amplitudes(2, 1, vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)]).unwrap();
        assert!(matches!(s.clone().measure_all(&mut trial_rng(0, 0)), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn trace_distance_examples() {
        let zero = QuditState::<f64>::zero(2, 1).unwrap();
        let one = QuditState::<f64>::basis(2, &[1]).unwrap();
        assert!(zero.trace_distance(&zero).unwrap().abs() < 1e-12);
        assert!((zero.trace_distance(&one).unwrap() - 1.0).abs() < 1e-12);
        assert!((zero.trace_distance(&h0()).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        let other = QuditState::<f64>::zero(2, 2).unwrap();
        assert!(matches!(zero.trace_distance(&other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn apply_rejects_bad_shapes() {
        let mut s = QuditState::<f64>::zero(3, 2).unwrap();
        let h = UnitaryOp::single(0, gates::hadamard()).unwrap();
        assert!(matches!(s.apply(&h), Err(Error::DimensionMismatch { .. })));
        let x = UnitaryOp::single(5, gates::shift::<f64>(3)).unwrap();
        assert!(matches!(s.apply(&x), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn debug_build_rejects_non_unitary() {
        if !cfg!(debug_assertions) {
            return;
        }
        let m = CMatrix::<f64>::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let mut s = QuditState::<f64>::zero(2, 1).unwrap();
        assert!(matches!(s.apply(&UnitaryOp::single(0, m).unwrap()), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn encoding_is_little_endian() {
        assert_eq!(index_of(&[1, 0, 2], 3), 1 + 2 * 9);
        assert_eq!(digits_of(19, 3, 3), vec![1, 0, 2]);
        let s = QuditState::<f64>::basis(2, &[1, 0]).unwrap();
        assert_eq!(s.amplitudes()[1], Complex::new(1.0, 0.0));
    }

    #[test]
    fn tensor_places_self_in_low_digits() {
        let a = QuditState::<f64>::basis(3, &[2]).unwrap();
        let b = QuditState::<f64>::basis(3, &[1]).unwrap();
        assert_eq!(a.tensor(&b).unwrap(), QuditState::basis(3, &[2, 1]).unwrap());
    }
}
