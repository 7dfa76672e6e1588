//! Dense univariate polynomials over `Q`.
//!
//! This is the universal carrier for every polynomial the crate manipulates:
//! traces `t(x)`, subgroup orders `r(x)`, field sizes `q(x)`, CM cofactors
//! `y(x)` and `h(x)`, and cyclotomic polynomials. Coefficients are exact
//! rationals; index `i` of the backing vector holds the coefficient of `x^i`.
//!
//! The zero polynomial is canonically the empty coefficient vector and its
//! degree is `None`, so it can never silently win or lose a degree
//! comparison. Every constructor and operation strips trailing zeros.
//!
//! Polynomials render to and parse from a plain text form shared by the CLI
//! and the family JSON documents: `36*x^4+36*x^3+18*x^2+6*x+1`,
//! `1/4*x^2-1/2`. Whitespace is ignored and `x` is the only variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

/// Parse failures for the shared polynomial text format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePolyError {
    #[error("empty polynomial string")]
    Empty,
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("malformed term near byte {0}")]
    MalformedTerm(usize),
    #[error("zero denominator in coefficient")]
    ZeroDenominator,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        QPoly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly { coeffs: vec![c] }
        }
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        QPoly { coeffs }
    }

    /// Builds from coefficients in ascending-power order, normalizing away
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Convenience constructor from integer coefficients, ascending powers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| rational::rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending-power order (empty for zero).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Monic multiple `f / lc(f)`; zero stays zero.
    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Flips the sign if the leading coefficient is negative.
    pub fn normalize_sign(&self) -> QPoly {
        if self.leading().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn derivative(&self) -> QPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rational::rat_int(i as i64))
            .collect();
        QPoly::from_coeffs(coeffs)
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, x0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x0 + c;
        }
        acc
    }

    /// Substitution: `self(inner(x))`, expanded.
    pub fn compose(&self, inner: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &QPoly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q*b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &QPoly) -> Result<(QPoly, QPoly), PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        let lead_inv = b.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let shift = rem.len() - 1 - db;
            let factor = rem.last().unwrap() * &lead_inv;
            if !factor.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate() {
                    let idx = shift + i;
                    let v = &rem[idx] - &(bc * &factor);
                    rem[idx] = v;
                }
                quot[shift] = factor;
            }
            rem.pop();
        }
        Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Remainder of Euclidean division.
    pub fn rem(&self, b: &QPoly) -> Result<QPoly, PolyError> {
        Ok(self.divmod(b)?.1)
    }

    /// True if `b` divides `self` exactly.
    pub fn divisible_by(&self, b: &QPoly) -> bool {
        match self.rem(b) {
            Ok(r) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor. `gcd(f, 0) = monic(f)`; both zero gives
    /// zero.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `g = gcd(self, other)` monic
    /// and `u*self + v*other = g`.
    pub fn extended_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = QPoly::one();
        let mut u1 = QPoly::zero();
        let mut v0 = QPoly::zero();
        let mut v1 = QPoly::one();
        while !r1.is_zero() {
            let (q, r2) = r0.divmod(&r1).expect("nonzero divisor");
            let u2 = &u0 - &(&q * &u1);
            let v2 = &v0 - &(&q * &v1);
            r0 = r1;
            r1 = r2;
            u0 = u1;
            u1 = u2;
            v0 = v1;
            v1 = v2;
        }
        if r0.is_zero() {
            return (QPoly::zero(), QPoly::zero(), QPoly::zero());
        }
        let lead_inv = r0.leading().recip();
        (
            r0.scale(&lead_inv),
            u0.scale(&lead_inv),
            v0.scale(&lead_inv),
        )
    }

    /// Exact square root with positive leading coefficient, or `None` if the
    /// polynomial is not a perfect square in `Q[x]`.
    ///
    /// Descends from the leading coefficient: odd degree or a non-square
    /// leading coefficient bail out immediately, then each lower coefficient
    /// of the root is forced linearly and a final squaring verifies the low
    /// half.
    pub fn sqrt(&self) -> Option<QPoly> {
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let deg = self.degree().unwrap();
        if !deg.is_multiple_of(2) {
            return None;
        }
        let half = deg / 2;
        let lead = self.leading();
        let root_lead = rational::sqrt_exact(&lead)?;
        let mut root = vec![Rational::zero(); half + 1];
        root[half] = root_lead;
        let two_lead = &root[half] + &root[half];
        for i in (0..half).rev() {
            // coefficient of x^(half+i) in root^2 is 2*root[half]*root[i]
            // plus cross terms from already-known higher coefficients
            let mut cross = Rational::zero();
            for j in (i + 1)..half {
                let k = half + i - j;
                if k > j {
                    continue;
                }
                let term = &root[j] * &root[k];
                cross = if k == j {
                    cross + term
                } else {
                    cross + &term + &term
                };
            }
            root[i] = (&self.coeff(half + i) - &cross) / &two_lead;
        }
        let candidate = QPoly::from_coeffs(root);
        if &(&candidate * &candidate) == self {
            Some(candidate.normalize_sign())
        } else {
            None
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut d = BigInt::one();
        for c in &self.coeffs {
            d = num_integer::lcm(d, c.denom().clone());
        }
        d
    }

    /// Clears denominators and divides out the integer content, returning the
    /// primitive integer form of `self` up to a positive rational unit.
    /// The sign of the leading coefficient is preserved. Zero maps to zero.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let scaled = c * Rational::from_integer(d.clone());
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            })
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = num_integer::gcd(content, c.clone());
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Rebuilds a `QPoly` from integer coefficients.
    pub fn from_bigint_coeffs(coeffs: Vec<BigInt>) -> Self {
        QPoly::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        QPoly::from_coeffs(out)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + &(a * b);
                out[i + j] = v;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let unit = abs.is_one();
            match exp {
                0 => write!(f, "{}", rational::format_rational(&abs))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", rational::format_rational(&abs))?;
                    }
                    if exp == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", exp)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self)
    }
}

impl FromStr for QPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let stripped: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        if stripped.is_empty() {
            return Err(ParsePolyError::Empty);
        }
        let mut parser = Parser {
            chars: stripped,
            pos: 0,
        };
        parser.poly()
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn byte_pos(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(b, _)| b)
            .unwrap_or_else(|| self.chars.last().map(|&(b, _)| b + 1).unwrap_or(0))
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn poly(&mut self) -> Result<QPoly, ParsePolyError> {
        let mut acc = QPoly::zero();
        let mut sign = match self.peek() {
            Some('+') => {
                self.bump();
                false
            }
            Some('-') => {
                self.bump();
                true
            }
            _ => false,
        };
        loop {
            let (coeff, exp) = self.term()?;
            let coeff = if sign { -coeff } else { coeff };
            acc = &acc + &QPoly::monomial(coeff, exp);
            match self.peek() {
                None => return Ok(acc),
                Some('+') => {
                    self.bump();
                    sign = false;
                }
                Some('-') => {
                    self.bump();
                    sign = true;
                }
                Some(c) => return Err(ParsePolyError::UnexpectedChar(c, self.byte_pos())),
            }
        }
    }

    /// One signless term: `number`, `number['*']xpart`, or `xpart`.
    fn term(&mut self) -> Result<(Rational, usize), ParsePolyError> {
        match self.peek() {
            Some('x') => {
                let exp = self.xpart()?;
                Ok((Rational::one(), exp))
            }
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.number()?;
                match self.peek() {
                    Some('*') => {
                        self.bump();
                        if self.peek() != Some('x') {
                            return Err(ParsePolyError::MalformedTerm(self.byte_pos()));
                        }
                        let exp = self.xpart()?;
                        Ok((coeff, exp))
                    }
                    Some('x') => {
                        let exp = self.xpart()?;
                        Ok((coeff, exp))
                    }
                    _ => Ok((coeff, 0)),
                }
            }
            Some(c) => Err(ParsePolyError::UnexpectedChar(c, self.byte_pos())),
            None => Err(ParsePolyError::MalformedTerm(self.byte_pos())),
        }
    }

    /// `x`, optionally followed by `^<uint>`.
    fn xpart(&mut self) -> Result<usize, ParsePolyError> {
        debug_assert_eq!(self.peek(), Some('x'));
        self.bump();
        if self.peek() == Some('^') {
            self.bump();
            let digits = self.digits()?;
            digits
                .parse::<usize>()
                .map_err(|_| ParsePolyError::MalformedTerm(self.byte_pos()))
        } else {
            Ok(1)
        }
    }

    /// Unsigned integer or `p/q` fraction.
    fn number(&mut self) -> Result<Rational, ParsePolyError> {
        let numer: BigInt = self.digits()?.parse().expect("digit run parses as integer");
        if self.peek() == Some('/') {
            self.bump();
            let denom: BigInt = self.digits()?.parse().expect("digit run parses as integer");
            if denom.is_zero() {
                return Err(ParsePolyError::ZeroDenominator);
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn digits(&mut self) -> Result<String, ParsePolyError> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.is_empty() {
            Err(ParsePolyError::MalformedTerm(self.byte_pos()))
        } else {
            Ok(out)
        }
    }
}
