//! Exact rational scalars.
//!
//! All coefficient arithmetic in this crate is over `Q`. We use
//! [`num_rational::BigRational`], which keeps values reduced with a positive
//! denominator and represents zero as `0/1`, exactly the canonical form the
//! rest of the crate relies on.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use num_rational::BigRational as Rational;

/// Rational from an integer.
pub fn rat_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational `n/d`. Panics on `d = 0`.
pub fn rat<T: Into<BigInt>, U: Into<BigInt>>(n: T, d: U) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The integer value of `r`, if `r` is an integer.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

/// Renders `p/q` with the `/q` part omitted for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True if `|r| = 1`.
pub fn is_unit(r: &Rational) -> bool {
    r.numer().abs() == r.denom().abs() && !r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn canonical_form() {
        let half = rat(2, 4);
        assert_eq!(half, rat(1, 2));
        assert_eq!(half.denom(), &BigInt::from(2));
        let neg = rat(3, -6);
        assert!(neg.denom().is_positive());
        assert_eq!(neg, rat(-1, 2));
        assert_eq!(rat(0, 7), Rational::zero());
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rat(2, 1)), None);
        assert_eq!(sqrt_exact(&rat(-4, 1)), None);
        assert_eq!(sqrt_exact(&Rational::zero()), Some(Rational::zero()));
        assert_eq!(sqrt_exact(&Rational::one()), Some(Rational::one()));
    }

    #[test]
    fn rendering() {
        assert_eq!(format_rational(&rat(1, 4)), "1/4");
        assert_eq!(format_rational(&rat_int(-36)), "-36");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
    }
}
