//! Cyclotomic polynomials and Euler's totient.
//!
//! `cyclotomic(k)` is generated by recursive exact division,
//! `Phi_k = (x^k - 1) / prod_{d|k, d<k} Phi_d`, which is exact over `Q` and
//! instant at the degrees this crate works with (k up to a few hundred).

use num_traits::One;

use crate::poly::QPoly;
use crate::rational::{rat_int, Rational};

/// Euler's totient `phi(k)`.
///
/// Panics if `k = 0`.
pub fn totient(k: u64) -> u64 {
    assert!(k >= 1, "totient is defined for k >= 1");
    let mut n = k;
    let mut result = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `k`-th cyclotomic polynomial: monic, integer coefficients, degree
/// `totient(k)`.
///
/// Panics if `k = 0`.
pub fn cyclotomic(k: u64) -> QPoly {
    assert!(k >= 1, "cyclotomic polynomials are indexed from 1");
    if k == 1 {
        return QPoly::from_ints(&[-1, 1]);
    }
    // x^k - 1 divided by the cyclotomic polynomials of all proper divisors
    let mut num = x_pow_minus_one(k);
    for d in 1..k {
        if k.is_multiple_of(d) {
            let (q, r) = num.divmod(&cyclotomic(d)).expect("nonzero divisor");
            debug_assert!(r.is_zero(), "cyclotomic division must be exact");
            num = q;
        }
    }
    num
}

fn x_pow_minus_one(k: u64) -> QPoly {
    let mut coeffs = vec![Rational::from_integer(0.into()); k as usize + 1];
    coeffs[0] = rat_int(-1);
    coeffs[k as usize] = Rational::one();
    QPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(cyclotomic(1), p("x-1"));
        assert_eq!(cyclotomic(2), p("x+1"));
        assert_eq!(cyclotomic(3), p("x^2+x+1"));
        assert_eq!(cyclotomic(4), p("x^2+1"));
        assert_eq!(cyclotomic(6), p("x^2-x+1"));
        assert_eq!(cyclotomic(8), p("x^4+1"));
        assert_eq!(cyclotomic(12), p("x^4-x^2+1"));
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(8), 4);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(97), 96);
        assert_eq!(totient(100), 40);
    }

    #[test]
    fn degree_matches_totient() {
        for k in 1..=100 {
            assert_eq!(cyclotomic(k).degree(), Some(totient(k) as usize), "k = {k}");
        }
    }

    #[test]
    fn product_over_divisors() {
        for k in 1..=30u64 {
            let mut prod = QPoly::one();
            for d in 1..=k {
                if k % d == 0 {
                    prod = &prod * &cyclotomic(d);
                }
            }
            assert_eq!(prod, x_pow_minus_one(k), "k = {k}");
        }
    }
}
