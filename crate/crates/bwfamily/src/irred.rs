//! Irreducibility over `Q` with reducibility witnesses.
//!
//! The pipeline, in order of increasing cost:
//!
//! 1. clear denominators and take the primitive integer form (units do not
//!    affect irreducibility over `Q`);
//! 2. a squarefree check: `gcd(f, f')` nonconstant immediately yields a
//!    repeated factor;
//! 3. rational root search for linear factors;
//! 4. factor-degree patterns modulo up to 12 odd primes that keep the
//!    polynomial squarefree and its degree intact: one irreducible reduction
//!    certifies irreducibility, and otherwise intersecting the subset-sum
//!    patterns of the mod-p factor degrees may exclude every proper degree;
//! 5. for degree at most 8, a Kronecker interpolation search that either
//!    produces a factor or proves there is none.
//!
//! Degrees above 8 whose patterns stay ambiguous are reported as a distinct
//! inconclusive error instead of a guess. The quotient-ring constructor and
//! the represents-primes predicate both propagate that error.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::QPoly;
use crate::primality::is_prime_u64;
use crate::rational::Rational;

/// Verdict of [`check_irreducible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Carries a nontrivial factor as witness (primitive integer
    /// coefficients, positive leading coefficient).
    Reducible(QPoly),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("irreducibility test inconclusive for degree {degree} (patterns ambiguous, Kronecker search limited to degree 8)")]
pub struct Inconclusive {
    pub degree: usize,
}

/// Decides irreducibility of a nonconstant polynomial over `Q`.
///
/// Panics if `f` is constant or zero.
pub fn check_irreducible(f: &QPoly) -> Result<Irreducibility, Inconclusive> {
    let deg = f.degree().expect("nonzero polynomial");
    assert!(deg >= 1, "irreducibility is about nonconstant polynomials");
    if deg == 1 {
        return Ok(Irreducibility::Irreducible);
    }

    // Repeated factors show up in gcd(f, f').
    let sqf = f.gcd(&f.derivative());
    if !sqf.is_constant() {
        return Ok(Irreducibility::Reducible(to_witness(&sqf)));
    }

    let ints = f.primitive_integer();
    if let Some(root) = rational_root(&ints) {
        return Ok(Irreducibility::Reducible(linear_from_root(&root)));
    }

    match degree_patterns(&ints, deg) {
        PatternOutcome::Irreducible => return Ok(Irreducibility::Irreducible),
        PatternOutcome::Ambiguous => {}
    }

    if deg > KRONECKER_MAX_DEGREE {
        return Err(Inconclusive { degree: deg });
    }
    match kronecker_factor(&ints, deg) {
        KroneckerOutcome::NoFactor => Ok(Irreducibility::Irreducible),
        KroneckerOutcome::Factor(g) => Ok(Irreducibility::Reducible(g)),
        KroneckerOutcome::GaveUp => Err(Inconclusive { degree: deg }),
    }
}

/// Primitive integer, positive-leading rendering of a factor witness.
fn to_witness(g: &QPoly) -> QPoly {
    QPoly::from_bigint_coeffs(g.primitive_integer()).normalize_sign()
}

fn linear_from_root(root: &Rational) -> QPoly {
    // root p/q gives the primitive factor q*x - p
    QPoly::from_coeffs(vec![
        Rational::from_integer(-root.numer().clone()),
        Rational::from_integer(root.denom().clone()),
    ])
    .normalize_sign()
}

/// Any rational root of the primitive integer polynomial, by trying
/// `±(divisor of constant)/(divisor of leading)`. Purely a fast path: the
/// Kronecker search re-covers degree-1 factors, so a `None` here (including
/// values too large to enumerate) is never taken as proof of anything.
fn rational_root(ints: &[BigInt]) -> Option<Rational> {
    // Zero constant term means x itself divides.
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let const_divs = small_divisors(&ints[0])?;
    let lead_divs = small_divisors(ints.last().expect("nonzero"))?;
    for p in &const_divs {
        for q in &lead_divs {
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(*p as i64 * sign), BigInt::from(*q as i64));
                if eval_ints(ints, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// All positive divisors of `|n|`, when `|n|` fits comfortably in a machine
/// word. `None` just means "too big to enumerate here".
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.magnitude().to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
        if d > 1 << 20 {
            return None;
        }
    }
    out.sort_unstable();
    Some(out)
}

fn eval_ints(ints: &[BigInt], x0: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in ints.iter().rev() {
        acc = acc * x0 + Rational::from_integer(c.clone());
    }
    acc
}

// ---------------------------------------------------------------------------
// Factor-degree patterns modulo small primes
// ---------------------------------------------------------------------------

const PATTERN_PRIMES: [u64; 46] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211,
];

const MAX_USABLE_PRIMES: usize = 12;

enum PatternOutcome {
    Irreducible,
    Ambiguous,
}

fn degree_patterns(ints: &[BigInt], deg: usize) -> PatternOutcome {
    // Bit i of `possible` = "a factor of degree i is not yet excluded".
    let full: u64 = if deg >= 63 {
        u64::MAX
    } else {
        (1u64 << (deg + 1)) - 1
    };
    let mut possible = full;
    let mut used = 0;
    for &p in PATTERN_PRIMES.iter() {
        if used >= MAX_USABLE_PRIMES {
            break;
        }
        let Some(fp) = reduce_mod_p(ints, p) else {
            continue; // leading coefficient vanished
        };
        if !modp::squarefree(&fp, p) {
            continue;
        }
        used += 1;
        let degrees = modp::ddf_degrees(&fp, p);
        if degrees == [(deg, 1)] {
            return PatternOutcome::Irreducible;
        }
        possible &= subset_sums(&degrees, deg);
        // Exclude the trivial degrees; if nothing proper remains, no proper
        // factor can exist over Q.
        let proper = possible & full & !1 & !(1u64 << deg);
        if proper == 0 {
            return PatternOutcome::Irreducible;
        }
    }
    PatternOutcome::Ambiguous
}

/// Bitset of achievable sub-multiset degree sums.
fn subset_sums(degrees: &[(usize, usize)], cap: usize) -> u64 {
    let mut sums: u64 = 1; // empty sum
    for &(d, count) in degrees {
        for _ in 0..count {
            let mut next = sums;
            for bit in 0..=cap {
                if sums & (1 << bit) != 0 && bit + d <= cap {
                    next |= 1 << (bit + d);
                }
            }
            sums = next;
        }
    }
    sums
}

fn reduce_mod_p(ints: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let pp = BigInt::from(p);
    let coeffs: Vec<u64> = ints
        .iter()
        .map(|c| {
            let m = ((c % &pp) + &pp) % &pp;
            m.to_u64().expect("residue fits")
        })
        .collect();
    if *coeffs.last().unwrap() == 0 {
        None
    } else {
        Some(coeffs)
    }
}

/// Dense polynomial arithmetic over `F_p` for small `p`.
mod modp {
    pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn deg(f: &[u64]) -> usize {
        f.len().saturating_sub(1)
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let dm = deg(m);
        let lead_inv = inv(*m.last().unwrap(), p);
        let mut r = a.to_vec();
        while r.len() > dm {
            let factor = r.last().unwrap() * lead_inv % p;
            if factor != 0 {
                let shift = r.len() - 1 - dm;
                for (i, &mc) in m.iter().enumerate() {
                    let sub = factor * mc % p;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        // normalize monic
        if let Some(&lc) = x.last() {
            let li = inv(lc, p);
            for c in &mut x {
                *c = *c * li % p;
            }
        }
        x
    }

    pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(f.len().saturating_sub(1));
        for (i, &c) in f.iter().enumerate().skip(1) {
            out.push(c * (i as u64 % p) % p);
        }
        trim(out)
    }

    pub fn squarefree(f: &[u64], p: u64) -> bool {
        let d = derivative(f, p);
        if d.is_empty() {
            return false;
        }
        deg(&gcd(f, &d, p)) == 0
    }

    /// `g^e mod m`.
    fn pow_mod(g: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(g, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Factor degrees `(degree, count)` of a squarefree monic-izable
    /// polynomial by distinct-degree factorization.
    pub fn ddf_degrees(f: &[u64], p: u64) -> Vec<(usize, usize)> {
        // work monic
        let li = inv(*f.last().unwrap(), p);
        let mut v: Vec<u64> = f.iter().map(|&c| c * li % p).collect();
        let x = vec![0u64, 1];
        let mut w = rem(&x, &v, p);
        let mut out = Vec::new();
        let mut d = 0usize;
        while deg(&v) >= 2 * (d + 1) {
            d += 1;
            w = pow_mod(&w, p, &v, p);
            // gcd(w - x, v)
            let mut diff = w.clone();
            while diff.len() < 2 {
                diff.push(0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            let diff = trim(diff);
            if diff.is_empty() {
                // x^(p^d) = x mod v: every factor degree divides d, and
                // earlier stages removed degrees below d, so all equal d
                out.push((d, deg(&v) / d));
                v = vec![1u64];
                break;
            }
            let g = gcd(&diff, &v, p);
            if deg(&g) > 0 {
                out.push((d, deg(&g) / d));
                let mut q = divide_exact(&v, &g, p);
                std::mem::swap(&mut v, &mut q);
                w = rem(&w, &v, p);
            }
        }
        if deg(&v) > 0 {
            out.push((deg(&v), 1));
        }
        out
    }

    fn divide_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let db = deg(b);
        let lead_inv = inv(*b.last().unwrap(), p);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        while r.len() > db {
            let factor = r.last().unwrap() * lead_inv % p;
            let shift = r.len() - 1 - db;
            q[shift] = factor;
            for (i, &bc) in b.iter().enumerate() {
                let sub = factor * bc % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r.pop();
        }
        trim(q)
    }
}

// ---------------------------------------------------------------------------
// Kronecker interpolation search
// ---------------------------------------------------------------------------

const KRONECKER_MAX_DEGREE: usize = 8;
const KRONECKER_TUPLE_CAP: u128 = 2_000_000;

enum KroneckerOutcome {
    NoFactor,
    Factor(QPoly),
    GaveUp,
}

/// Exhaustive search for a proper factor of a primitive, squarefree integer
/// polynomial. Tries factor degrees 1..=deg/2; a found factor of minimal
/// degree is itself irreducible.
fn kronecker_factor(ints: &[BigInt], deg: usize) -> KroneckerOutcome {
    let f = QPoly::from_bigint_coeffs(ints.to_vec());
    for s in 1..=deg / 2 {
        let Some(points) = usable_points(ints, s + 1) else {
            return KroneckerOutcome::GaveUp;
        };
        let divisor_lists: Vec<Vec<i128>> = points
            .iter()
            .enumerate()
            .map(|(idx, &(_, value))| signed_divisors(value, idx == 0))
            .collect();
        let combos: u128 = divisor_lists.iter().map(|d| d.len() as u128).product();
        if combos > KRONECKER_TUPLE_CAP {
            return KroneckerOutcome::GaveUp;
        }
        let basis = lagrange_basis(&points);
        let mut indices = vec![0usize; divisor_lists.len()];
        loop {
            // interpolate candidate through (a_i, v_i)
            let mut candidate = QPoly::zero();
            for (i, base) in basis.iter().enumerate() {
                let v = Rational::from_integer(BigInt::from(divisor_lists[i][indices[i]]));
                candidate = &candidate + &base.scale(&v);
            }
            if candidate.degree() == Some(s)
                && candidate.coeffs().iter().all(|c| c.is_integer())
                && f.divisible_by(&candidate)
            {
                return KroneckerOutcome::Factor(to_witness(&candidate));
            }
            // advance odometer
            let mut pos = 0;
            loop {
                if pos == indices.len() {
                    break;
                }
                indices[pos] += 1;
                if indices[pos] < divisor_lists[pos].len() {
                    break;
                }
                indices[pos] = 0;
                pos += 1;
            }
            if pos == indices.len() {
                break;
            }
        }
    }
    KroneckerOutcome::NoFactor
}

/// The first `count` integer points (0, 1, -1, 2, -2, ...) where the
/// polynomial is nonzero and its value can be completely factored.
fn usable_points(ints: &[BigInt], count: usize) -> Option<Vec<(i64, i128)>> {
    let mut points = Vec::with_capacity(count);
    let mut seq = 0i64;
    let mut steps = 0;
    while points.len() < count && steps < 200 {
        let a = seq;
        seq = if seq > 0 { -seq } else { -seq + 1 };
        steps += 1;
        let value = eval_ints(ints, &Rational::from_integer(BigInt::from(a)));
        let value = value.to_integer();
        if value.is_zero() {
            continue; // roots were already extracted
        }
        let Some(v) = value.to_i128() else {
            continue;
        };
        if factor_i128(v.unsigned_abs()).is_some() {
            points.push((a, v));
        }
    }
    (points.len() == count).then_some(points)
}

/// All signed divisors of `value`; restricted to positive ones when `positive_only`.
fn signed_divisors(value: i128, positive_only: bool) -> Vec<i128> {
    let n = value.unsigned_abs();
    let factors = factor_i128(n).expect("checked in usable_points");
    let mut divisors: Vec<u128> = vec![1];
    for (p, e) in factors {
        let mut extended = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut pe = 1u128;
            for _ in 0..=e {
                extended.push(d * pe);
                if pe <= u128::MAX / p {
                    pe *= p;
                } else {
                    break;
                }
            }
        }
        divisors = extended;
    }
    divisors.sort_unstable();
    divisors.dedup();
    let mut out: Vec<i128> = Vec::with_capacity(divisors.len() * 2);
    for d in divisors {
        let d = d as i128;
        out.push(d);
        if !positive_only {
            out.push(-d);
        }
    }
    out
}

/// Complete factorization of a u128 by trial division up to 2^20, requiring
/// any remaining cofactor to be a u64 prime.
fn factor_i128(mut n: u128) -> Option<Vec<(u128, u32)>> {
    let mut out = Vec::new();
    let mut push = |p: u128, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    for p in [2u128, 3, 5] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        push(p, e);
    }
    let mut p = 7u128;
    while p * p <= n && p < (1 << 20) {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if n > 1 {
        // A composite cofactor below 2^40 would have had a divisor under
        // 2^20, so a primality check settles everything that fits in u64.
        if u64::try_from(n).is_ok_and(is_prime_u64) {
            out.push((n, 1));
            return Some(out);
        }
        return None;
    }
    Some(out)
}

/// Lagrange basis polynomials for the given interpolation points.
fn lagrange_basis(points: &[(i64, i128)]) -> Vec<QPoly> {
    points
        .iter()
        .enumerate()
        .map(|(i, &(ai, _))| {
            let mut numer = QPoly::one();
            let mut denom = Rational::one();
            for (j, &(aj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                numer = &numer * &QPoly::from_ints(&[-aj, 1]);
                denom *= Rational::from_integer(BigInt::from(ai - aj));
            }
            numer.scale(&denom.recip())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn assert_irreducible(s: &str) {
        assert_eq!(
            check_irreducible(&p(s)).unwrap(),
            Irreducibility::Irreducible,
            "{s}"
        );
    }

    fn assert_factor(s: &str, expected: &str) {
        match check_irreducible(&p(s)).unwrap() {
            Irreducibility::Reducible(g) => assert_eq!(g, p(expected), "{s}"),
            other => panic!("{s}: expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn certified_by_mod_p() {
        assert_irreducible("x^2+1");
        assert_irreducible("x^2+x+1");
        assert_irreducible("x^2-x+1");
    }

    #[test]
    fn kronecker_handles_biquadratic_fields() {
        // These generate multiquadratic fields, so no reduction mod p is
        // irreducible and the degree patterns never settle.
        assert_irreducible("x^4+1");
        assert_irreducible("x^4-x^2+1");
        assert_irreducible("36*x^4+36*x^3+18*x^2+6*x+1");
        assert_irreducible("36*x^4+36*x^3+24*x^2+6*x+1");
    }

    #[test]
    fn higher_degree_cyclotomics() {
        assert_irreducible("x^8+1"); // Phi_16
        assert_irreducible("x^8-x^4+1"); // Phi_24
    }

    #[test]
    fn reducible_with_witness() {
        assert_factor("x^2-1", "x-1");
        // repeated factor via the squarefree check
        assert_factor("x^2+2*x+1", "x+1");
        // product of the two quartic cyclotomics
        match check_irreducible(&(&p("x^4+1") * &p("x^4-x^2+1"))).unwrap() {
            Irreducibility::Reducible(g) => {
                assert!(g == p("x^4+1") || g == p("x^4-x^2+1"), "got {g}");
            }
            other => panic!("expected reducible, got {other:?}"),
        }
        // rational root -1
        assert_factor("2*x^3+x^2-4*x-3", "x+1");
    }

    #[test]
    fn rational_coefficients_are_fine() {
        assert_irreducible("1/4*x^4+x^2+1/4");
        assert_irreducible("1/4*x^4+3/4*x^2+1/4");
        assert_factor("1/3*x^2+2/3*x+1/3", "x+1");
    }

    #[test]
    fn quartic_with_two_quadratic_factors() {
        // (x^2+x+1)(x^2-x+1) = x^4+x^2+1
        match check_irreducible(&p("x^4+x^2+1")).unwrap() {
            Irreducibility::Reducible(g) => {
                assert!(g == p("x^2+x+1") || g == p("x^2-x+1"), "got {g}");
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn high_degree_ambiguity_is_inconclusive() {
        // x^16+1 never factors the same way twice mod p (all factor degrees
        // divide 8), and degree 16 is beyond the Kronecker search, so the
        // honest answer is "inconclusive" even though it is irreducible.
        let f = p("x^16+1");
        assert_eq!(check_irreducible(&f), Err(Inconclusive { degree: 16 }));
    }

    #[test]
    fn degree_one_is_irreducible() {
        assert_irreducible("x-1");
        assert_irreducible("6*x+2");
    }
}
