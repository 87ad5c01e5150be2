use num_rational::Ratio;
use rand::Rng;

use crate::error::{invalid, Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient by factorization. `totient(1) = 1`.
pub fn totient(q: u64) -> u64 {
    if q == 0 {
        return 0;
    }
    prime_factors(q).into_iter().fold(q, |acc, p| acc / p * (p - 1))
}

/// `∏_{p | q} (1 − 1/p)` as an exact rational.
pub fn euler_product(q: u64) -> Ratio<u64> {
    prime_factors(q).into_iter().fold(Ratio::from_integer(1), |acc, p| acc * Ratio::new(p - 1, p))
}

/// `φ(q)/q` in floating point.
pub fn totient_ratio(q: u64) -> f64 {
    totient(q) as f64 / q as f64
}

/// Rosser–Schoenfeld lower bound `1 / (e^γ ln ln q + 3 / ln ln q)` on `φ(q)/q`.
/// Defined for `q ≥ 3`.
pub fn rosser_schoenfeld_bound(q: u64) -> f64 {
    // e^γ for the Euler–Mascheroni constant γ.
    const EXP_GAMMA: f64 = 1.781_072_417_990_198;
    let ll = (q as f64).ln().ln();
    1.0 / (EXP_GAMMA * ll + 3.0 / ll)
}

/// `b` with `a·b ≡ 1 (mod q)`, via extended Euclid.
pub fn mod_inverse(a: u64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(invalid("modulus must be positive"));
    }
    if q == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 != 1 {
        return Err(Error::NoInverse { a, q });
    }
    Ok(t0.rem_euclid(q as i128) as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin. The witness set {2, 3, 5, 7} is exact below
/// 3 215 031 751, which covers every modulus up to 2³²; larger inputs fall back
/// to the twelve-prime set that is exact for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let witnesses: &[u64] = if n < 3_215_031_751 { &SMALL[..4] } else { &SMALL };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in witnesses {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniform prime from `[2^bits / 2, 2^bits)` by rejection sampling.
pub fn sample_prime<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> Result<u64> {
    if !(2..=32).contains(&bits) {
        return Err(invalid(format!("prime bit length must lie in 2..=32, got {bits}")));
    }
    let hi = 1u64 << bits;
    let lo = hi / 2;
    // Bertrand's postulate guarantees a prime here; the guard only catches a
    // broken primality test.
    if !(lo..hi).any(is_prime) && bits <= 16 {
        return Err(Error::EmptyRange { lo, hi });
    }
    loop {
        let candidate = rng.gen_range(lo..hi);
        if is_prime(candidate) {
            return Ok(candidate);
        }
    }
}

/// Probability that `n` uniform vectors in `F_2^n` are linearly independent,
/// `∏_{j=0}^{n−1} (1 − 2^{j−n})`.
pub fn independence_probability(n: u32) -> f64 {
    (0..n).map(|j| 1.0 - 2f64.powi(j as i32 - n as i32)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn coprime_count(q: u64) -> u64 {
        (1..=q).filter(|&k| gcd(k, q) == 1).count() as u64
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(23), 22);
        assert_eq!(totient(12), coprime_count(12));
        assert_eq!(totient(12), 4);
        assert_eq!(coprime_count(2310), 480);
        assert_eq!(totient(2310), 480);
        assert_eq!(totient(1), 1);
    }

    #[test]
    fn euler_product_matches_totient_ratio_exactly() {
        for q in 1..=500u64 {
            assert_eq!(euler_product(q), Ratio::new(totient(q), q), "q={q}");
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 17).unwrap(), 1);
        let brute = (0..23).find(|b| (5 * b) % 23 == 1).unwrap();
        assert_eq!(brute, 14);
        assert_eq!(mod_inverse(5, 23).unwrap(), 14);
        assert_eq!(mod_inverse(4, 12), Err(Error::NoInverse { a: 4, q: 12 }));
    }

    #[test]
    fn mod_inverse_exhaustive_small_moduli() {
        for q in 2..=200u64 {
            for a in 0..q {
                match mod_inverse(a, q) {
                    Ok(b) => assert_eq!(a * b % q, 1, "a={a} q={q}"),
                    Err(_) => assert_ne!(gcd(a, q), 1),
                }
            }
        }
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial(n), "n={n}");
        }
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn sample_prime_four_bits() {
        let mut rng = trial_rng(0, 0);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            let p = sample_prime(4, &mut rng).unwrap();
            assert!(p == 11 || p == 13);
            seen.insert(p);
        }
        assert_eq!(seen.len(), 2);
        assert!(sample_prime(1, &mut rng).is_err());
    }

    #[test]
    fn sample_prime_in_range_for_many_draws() {
        let mut rng = trial_rng(1, 0);
        for i in 0..1000 {
            let bits = 2 + (i % 29) as u32;
            let p = sample_prime(bits, &mut rng).unwrap();
            assert!(is_prime(p));
            assert!(p >= (1u64 << bits) / 2 && p < 1u64 << bits);
        }
    }

    #[test]
    fn independence_probability_values() {
        assert!((independence_probability(2) - 0.375).abs() < 1e-15);
        for n in 1..=10 {
            assert!(independence_probability(n) > 0.25);
        }
    }
}
