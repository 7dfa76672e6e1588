//! Property tests for the algebraic laws the library is built on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use bwfamily::cyclo::{cyclotomic, totient};
use bwfamily::family::{bw_construct, rho, validate};
use bwfamily::integrality::{integrality_profile, value_gcd};
use bwfamily::poly::QPoly;
use bwfamily::rational::{rat, Rational};
use bwfamily::ring::{ResidueRing, ZetaImage};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=10).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(QPoly::from_coeffs)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    poly(max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-40i64..=40, 0..=max_deg + 1).prop_map(|coeffs| QPoly::from_ints(&coeffs))
}

/// Every coefficient of every result stays in canonical reduced form.
fn assert_canonical(f: &QPoly) {
    for c in f.coeffs() {
        assert!(c.denom().is_positive());
        assert!(num_integer::gcd(c.numer().clone(), c.denom().clone()).is_one());
    }
    if let Some(d) = f.degree() {
        assert!(!f.coeff(d).is_zero(), "leading coefficient must be nonzero");
    }
}

proptest! {
    #[test]
    fn division_law(a in poly(8), b in nonzero_poly(5)) {
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&(&q * &b) + &r), &a);
        if let Some(dr) = r.degree() {
            prop_assert!(dr < b.degree().unwrap());
        }
        assert_canonical(&q);
        assert_canonical(&r);
    }

    #[test]
    fn gcd_divides_and_bezout(a in poly(6), b in poly(6)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(!g.is_zero());
        prop_assert!(a.divisible_by(&g));
        prop_assert!(b.divisible_by(&g));
        prop_assert!(g.leading().is_one());
        let (g2, u, v) = a.extended_gcd(&b);
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(&(&(&u * &a) + &(&v * &b)), &g);
        assert_canonical(&g);
    }

    #[test]
    fn sqrt_round_trip(f in nonzero_poly(6)) {
        let square = &f * &f;
        let root = square.sqrt().expect("a square has a square root");
        prop_assert!(root == f.normalize_sign());
        prop_assert!(root.leading().is_positive());
    }

    #[test]
    fn compose_commutes_with_eval(f in poly(4), g in poly(3), c in rational()) {
        let composed = f.compose(&g);
        prop_assert_eq!(composed.eval(&c), f.eval(&g.eval(&c)));
        assert_canonical(&composed);
    }

    #[test]
    fn arithmetic_stays_canonical(a in poly(6), b in poly(6)) {
        assert_canonical(&(&a + &b));
        assert_canonical(&(&a - &b));
        assert_canonical(&(&a * &b));
        assert_canonical(&-&a);
    }

    #[test]
    fn profile_agrees_with_brute_force(f in nonzero_poly(6)) {
        let profile = integrality_profile(&f);
        let d: BigInt = BigInt::from(profile.d.clone());
        let bound: i64 = 4 * profile.d.to_string().parse::<i64>().unwrap_or(1).min(100);
        for a in -bound..=bound {
            let integral = f.eval(&Rational::from_integer(BigInt::from(a))).is_integer();
            let residue = BigInt::from(a).mod_floor(&d);
            let in_profile = profile.good_residues.contains(&residue.magnitude().clone());
            prop_assert_eq!(integral, in_profile, "at {}", a);
        }
    }

    #[test]
    fn integer_polynomials_are_integral_everywhere(f in int_poly(6)) {
        prop_assume!(!f.is_zero());
        let profile = integrality_profile(&f);
        prop_assert!(profile.represents_integers());
        prop_assert_eq!(profile.d, num_bigint::BigUint::from(1u32));
        prop_assert_eq!(profile.good_residues.len(), 1);
    }

    #[test]
    fn value_gcd_divides_samples(f in int_poly(5)) {
        prop_assume!(!f.is_zero());
        let g = BigInt::from(value_gcd(&f).unwrap());
        for a in -20i64..=20 {
            let v = f.eval(&Rational::from_integer(BigInt::from(a))).to_integer();
            if g.is_zero() {
                prop_assert!(v.is_zero());
            } else {
                prop_assert!((&v % &g).is_zero(), "{} not divisible by {}", v, g);
            }
        }
    }
}

use num_integer::Integer as _;

#[test]
fn ring_inverse_law_on_test_rings() {
    let on_ring = |modulus: &str| {
        let ring = ResidueRing::new(modulus.parse().unwrap()).unwrap();
        let mut state = 0x243F_6A88_85A3_08D3u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as i64 - (1 << 30)
        };
        for _ in 0..200 {
            let coeffs: Vec<Rational> = (0..ring.degree())
                .map(|_| rat(next() % 97, 1 + (next().unsigned_abs() % 7) as i64))
                .collect();
            let a = ring.element(&QPoly::from_coeffs(coeffs));
            if a.is_zero() {
                continue;
            }
            let inv = a.inv().unwrap();
            assert_eq!(a.mul(&inv).unwrap(), ring.one(), "in Q[x]/({modulus})");
        }
    };
    on_ring("x^4+1");
    on_ring("x^4-x^2+1");
    on_ring("36*x^4+36*x^3+18*x^2+6*x+1");
    on_ring("x^2+x+1");
}

#[test]
fn zeta_images_have_exact_order() {
    let cases = [
        (4u64, "x^4+1", "x^2"),
        (8, "x^4+1", "x"),
        (12, "x^4-x^2+1", "x"),
        (6, "x^4-x^2+1", "x^2"),
        (12, "36*x^4+36*x^3+18*x^2+6*x+1", "6*x^2"),
    ];
    for (k, modulus, z) in cases {
        let ring = ResidueRing::new(modulus.parse().unwrap()).unwrap();
        let zeta = ZetaImage::new(k, ring.element(&z.parse().unwrap())).unwrap();
        assert_eq!(zeta.element().pow(k), ring.one());
        for j in 1..k {
            assert_ne!(zeta.element().pow(j), ring.one(), "k={k} j={j}");
        }
    }
}

#[test]
fn cyclotomic_degrees_match_totient() {
    for k in 1..=100 {
        assert_eq!(cyclotomic(k).degree(), Some(totient(k) as usize));
    }
}

/// Structural identities of every constructed family, across the built-in
/// square-root table.
#[test]
fn constructed_families_satisfy_identities() {
    let cases: [(u64, u64, &str, &str); 6] = [
        (4, 1, "x^4+1", "x^2"),
        (4, 2, "x^4+1", "x^2"),
        (8, 1, "x^4+1", "x"),
        (8, 2, "x^4+1", "x"),
        (12, 1, "x^4-x^2+1", "x"),
        (12, 3, "36*x^4+36*x^3+18*x^2+6*x+1", "6*x^2"),
    ];
    for (k, d, modulus, z) in cases {
        let ring = ResidueRing::new(modulus.parse().unwrap()).unwrap();
        let zeta = ZetaImage::new(k, ring.element(&z.parse().unwrap())).unwrap();
        let c = bw_construct(k, d, &ring, &zeta, None).unwrap();

        // h r = q + 1 - t
        assert_eq!(&c.h * &c.r, c.numerator_of_order(), "k={k} D={d}");
        // r | Phi_k(t - 1)
        assert!(c.cyclotomic_value().divisible_by(&c.r), "k={k} D={d}");
        // D y^2 = 4q - t^2
        assert_eq!(c.cm_lhs(), c.cm_rhs(), "k={k} D={d}");
        // reduced representatives
        assert!(c.t.degree() < c.r.degree(), "k={k} D={d}");
        assert!(c.y.degree() < c.r.degree(), "k={k} D={d}");
        // the two rho expressions agree
        let dq = c.q.degree().unwrap();
        let alt = 2 * c.y.degree().unwrap().max(c.t.degree().unwrap());
        assert_eq!(dq, alt, "k={k} D={d}");
        let _ = rho(&c);

        // conditions (iii), (iv), (v) always hold on constructor output
        let diag = validate(&c);
        assert!(diag.conditions[2].holds(), "k={k} D={d}");
        assert!(diag.conditions[3].holds(), "k={k} D={d}");
        assert!(diag.conditions[4].holds(), "k={k} D={d}");
        assert!(diag.stored_y_consistent && diag.stored_h_consistent);
    }
}

/// The hit count of a wide scan matches an independent recount (made with a
/// separate computer-algebra system at build time and frozen here), and each
/// hit passes a test-local Miller-Rabin written against u128 arithmetic.
#[test]
fn bn_scan_recount() {
    use bwfamily::instantiate::scan_range;
    use bwfamily::registry::builtin;

    let bn = builtin("bn").unwrap().to_candidate().unwrap();
    let report = scan_range(&bn, &BigInt::from(-10_000), &BigInt::from(10_000), 0);
    assert_eq!(report.hits.len(), 275);
    assert_eq!(report.hits.first().unwrap().x0, BigInt::from(-9974));
    assert_eq!(report.hits.last().unwrap().x0, BigInt::from(9702));
    let misses: u64 = report.near_misses.values().sum();
    assert_eq!(report.hits.len() as u64 + misses, 20_001);
    for hit in &report.hits {
        let r0: u64 = hit.r0.to_string().parse().unwrap();
        let q0: u64 = hit.q0.to_string().parse().unwrap();
        assert!(mr_u64(r0) && mr_u64(q0), "x0 = {}", hit.x0);
    }
}

/// Deterministic Miller-Rabin over u128 arithmetic, independent of the
/// library implementation.
fn mr_u64(n: u64) -> bool {
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
    'witness: for w in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x: u128 = 1;
        let mut base = w as u128 % n as u128;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = x * base % n as u128;
            }
            base = base * base % n as u128;
            e >>= 1;
        }
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
