//! Big-integer primality testing.
//!
//! Below 3,317,044,064,679,887,385,961,981 (about 3.3e24) the test is a
//! deterministic Miller-Rabin round over the first 13 primes, which is known
//! to have no strong pseudoprimes in that range. Above it, 64 rounds with
//! witnesses drawn from a ChaCha stream seeded from the input (and an
//! optional caller seed) keep the error probability at 2^-128 while staying
//! reproducible run to run.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Witnesses with no strong pseudoprime below 3.3e24.
const SMALL_PRIME_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const PROBABILISTIC_ROUNDS: usize = 64;

/// Which testing regime applies to a magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimalityRegime {
    /// Fixed witness set; the answer is unconditionally correct.
    Deterministic,
    /// 64 random rounds; composites May pass with probability at most 2^-128.
    Probabilistic,
}

/// Upper bound (exclusive) of the deterministic regime.
pub fn deterministic_bound() -> BigUint {
    "3317044064679887385961981".parse().expect("literal")
}

/// The regime [`is_prime`] uses for `n`.
pub fn regime(n: &BigInt) -> PrimalityRegime {
    if n.magnitude() < &deterministic_bound() {
        PrimalityRegime::Deterministic
    } else {
        PrimalityRegime::Probabilistic
    }
}

/// True iff `|n|` is prime. Equivalent to `is_prime_seeded(n, 0)`.
pub fn is_prime(n: &BigInt) -> bool {
    is_prime_seeded(n, 0)
}

/// True iff `|n|` is prime, with witness randomness (only used above the
/// deterministic bound) derived from `seed` and `n` so results are
/// reproducible for a fixed seed.
pub fn is_prime_seeded(n: &BigInt, seed: u64) -> bool {
    let m = n.magnitude();
    if let Some(small) = m.to_u64() {
        return is_prime_u64(small);
    }
    if m < &deterministic_bound() {
        return miller_rabin(m, SMALL_PRIME_WITNESSES.iter().map(|&w| BigUint::from(w)));
    }
    let mut rng = witness_rng(m, seed);
    let lo = BigUint::from(2u32);
    let hi = m - 2u32;
    let witnesses: Vec<BigUint> = (0..PROBABILISTIC_ROUNDS)
        .map(|_| rng.gen_biguint_range(&lo, &hi))
        .collect();
    miller_rabin(m, witnesses.into_iter())
}

fn witness_rng(n: &BigUint, seed: u64) -> ChaCha8Rng {
    // Mix the low bits of n into the stream so distinct inputs get distinct
    // witness sequences under the same caller seed.
    let low = (n % BigUint::from(u64::MAX)).to_u64().unwrap_or(0);
    ChaCha8Rng::seed_from_u64(seed ^ low.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn miller_rabin(n: &BigUint, witnesses: impl Iterator<Item = BigUint>) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n-1 is nonzero");
    let d = &n_minus_1 >> s;
    'witness: for w in witnesses {
        let w = w % n;
        if w.is_zero() || w.is_one() || w == n_minus_1 {
            continue;
        }
        let mut x = w.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // The first 12 primes have no strong pseudoprime below 2^64.
    'witness: for w in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// If `n = p^e` for a prime `p` and exponent `e >= 2`, returns `(p, e)`.
pub fn perfect_prime_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n < &BigUint::from(4u32) {
        return None;
    }
    let bits = n.bits() as u32;
    for e in 2..=bits {
        let root = n.nth_root(e);
        if root < BigUint::from(2u32) {
            break;
        }
        if root.pow(e) == *n && is_prime(&BigInt::from(root.clone())) {
            return Some((root, e));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_cases() {
        assert!(is_prime(&big(97)));
        assert!(is_prime(&big(103)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(0)));
        assert!(is_prime(&big(2)));
        assert!(!is_prime(&big(1261))); // 97 * 13
        assert!(is_prime(&big(-97))); // tested by absolute value
    }

    #[test]
    fn known_large_values() {
        // 2^89 - 1 is a Mersenne prime; 2^87 - 1 = 3 * 4363953127297 * ...
        let m89: BigInt = (BigInt::one() << 89) - 1;
        assert!(is_prime(&m89));
        let m87: BigInt = (BigInt::one() << 87) - 1;
        assert!(!is_prime(&m87));
    }

    #[test]
    fn probabilistic_regime_is_reproducible() {
        // A 128-bit prime: 2^127 - 1 is below the bound, so go bigger.
        let n: BigInt = (BigInt::one() << 521) - 1; // Mersenne prime
        assert_eq!(regime(&n), PrimalityRegime::Probabilistic);
        assert!(is_prime_seeded(&n, 7));
        assert!(is_prime_seeded(&n, 7));
        let composite: BigInt = ((BigInt::one() << 521) - 1) * 3;
        assert!(!is_prime_seeded(&composite, 7));
    }

    #[test]
    fn regime_boundary() {
        let bound = BigInt::from(deterministic_bound());
        assert_eq!(regime(&(&bound - 1)), PrimalityRegime::Deterministic);
        assert_eq!(regime(&bound), PrimalityRegime::Probabilistic);
    }

    #[test]
    fn prime_powers() {
        let n = BigUint::from(3u32).pow(7);
        assert_eq!(perfect_prime_power(&n), Some((BigUint::from(3u32), 7)));
        assert_eq!(
            perfect_prime_power(&BigUint::from(64u32)),
            Some((BigUint::from(2u32), 6))
        );
        assert_eq!(perfect_prime_power(&BigUint::from(97u32)), None);
        assert_eq!(perfect_prime_power(&BigUint::from(36u32)), None);
        assert_eq!(perfect_prime_power(&BigUint::from(1u32)), None);
    }

    #[test]
    fn u64_path_matches_trial_division() {
        let mut sieve = vec![true; 10_000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..10_000usize {
            if sieve[i] {
                for j in (i * i..10_000).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), expected, "n = {n}");
        }
    }
}
