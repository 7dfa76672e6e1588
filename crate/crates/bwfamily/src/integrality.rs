//! Decision procedures for "represents integers" and "represents primes".
//!
//! For `f` in `Q[x]` let `d` be the least common multiple of its coefficient
//! denominators. Then `d*f` has integer coefficients, so whether `f(a)` is an
//! integer depends only on `a mod d`: the residues for which it is form the
//! [`IntegralityProfile`], and `f` represents integers exactly when that set
//! is nonempty.
//!
//! The gcd of all integer values of `f` is computed exactly: for each good
//! residue `a0`, the shifted polynomial `g(x) = f(a0 + d*x)` is
//! integer-valued on all of `Z`, and the gcd of an integer-valued polynomial's
//! values over `Z` equals `gcd(g(0), ..., g(deg g))` because the finite
//! differences of that window already generate its binomial-basis
//! coefficients. Conventions: `gcd(0, n) = |n|` and the gcd over an empty set
//! is 0.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::irred::{check_irreducible, Inconclusive, Irreducibility};
use crate::poly::QPoly;
use crate::rational::Rational;

/// Where a polynomial takes integer values, as residues modulo the
/// denominator lcm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityProfile {
    /// lcm of coefficient denominators; integrality of `f(a)` depends only on
    /// `a mod d`.
    pub d: BigUint,
    /// Sorted residues `a mod d` with `f(a)` integral.
    pub good_residues: Vec<BigUint>,
}

impl IntegralityProfile {
    /// True iff some integer argument yields an integer value.
    pub fn represents_integers(&self) -> bool {
        !self.good_residues.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomial never takes integer values at integer arguments")]
pub struct NeverIntegral;

/// Verdict of the represents-primes predicate, with each requirement
/// reported separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimesVerdict {
    pub represents_integers: bool,
    pub irreducible: bool,
    pub positive_leading: bool,
    /// Exact gcd of all integer values; 0 when there are none.
    pub value_gcd: BigUint,
    /// Conjunction: nonconstant, irreducible, represents integers, positive
    /// leading coefficient, and value gcd 1.
    pub verdict: bool,
}

/// Computes the integrality profile of a nonzero polynomial.
///
/// Panics if `f` is zero.
pub fn integrality_profile(f: &QPoly) -> IntegralityProfile {
    assert!(!f.is_zero(), "profile of the zero polynomial is not useful");
    let d = f.denominator_lcm().magnitude().clone();
    let scaled: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let v = c * Rational::from_integer(BigInt::from(d.clone()));
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    let mut good = Vec::new();
    let modulus = BigInt::from(d.clone());
    let mut a = BigInt::zero();
    while a.magnitude() < &d {
        // Horner evaluation of (d*f)(a) mod d
        let mut acc = BigInt::zero();
        for c in scaled.iter().rev() {
            acc = (acc * &a + c) % &modulus;
        }
        if acc.is_zero() {
            good.push(a.magnitude().clone());
        }
        a += 1;
    }
    IntegralityProfile {
        d,
        good_residues: good,
    }
}

/// The exact gcd of all integer values of `f` over integer arguments.
///
/// Errors if `f` never takes integer values. Panics if `f` is zero.
pub fn value_gcd(f: &QPoly) -> Result<BigUint, NeverIntegral> {
    let profile = integrality_profile(f);
    value_gcd_with_profile(f, &profile)
}

pub(crate) fn value_gcd_with_profile(
    f: &QPoly,
    profile: &IntegralityProfile,
) -> Result<BigUint, NeverIntegral> {
    if !profile.represents_integers() {
        return Err(NeverIntegral);
    }
    let d = BigInt::from(profile.d.clone());
    let deg = f.degree().expect("nonzero");
    let mut gcd = BigUint::zero();
    for a0 in &profile.good_residues {
        let a0 = BigInt::from(a0.clone());
        // g(x) = f(a0 + d*x) is integer-valued on Z; its value gcd is the
        // gcd of deg+1 consecutive values.
        for j in 0..=deg {
            let arg = Rational::from_integer(&a0 + &d * BigInt::from(j));
            let value = f.eval(&arg);
            debug_assert!(value.is_integer(), "good residue must give integers");
            gcd = num_integer::gcd(gcd, value.to_integer().magnitude().clone());
            if gcd.is_one() {
                return Ok(gcd);
            }
        }
    }
    Ok(gcd)
}

/// Full represents-primes verdict for a nonzero polynomial.
///
/// Errors if irreducibility cannot be decided; panics if `f` is zero.
pub fn represents_primes(f: &QPoly) -> Result<PrimesVerdict, Inconclusive> {
    assert!(!f.is_zero());
    let nonconstant = !f.is_constant();
    let irreducible = if nonconstant {
        matches!(check_irreducible(f)?, Irreducibility::Irreducible)
    } else {
        false
    };
    let profile = integrality_profile(f);
    let represents_integers = profile.represents_integers();
    let positive_leading = f.leading().is_positive();
    let value_gcd = value_gcd_with_profile(f, &profile).unwrap_or_else(|_| BigUint::zero());
    let verdict =
        nonconstant && irreducible && represents_integers && positive_leading && value_gcd.is_one();
    Ok(PrimesVerdict {
        represents_integers,
        irreducible,
        positive_leading,
        value_gcd,
        verdict,
    })
}
