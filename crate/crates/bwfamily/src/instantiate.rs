//! Turning a polynomial family into concrete certified curve parameters.
//!
//! Evaluating the family polynomials at an integer `x0` yields candidate
//! parameters `(t0, r0, q0, y0, h0)`. A candidate is a *hit* when the whole
//! CM hypothesis list holds at the integer level, re-checked independently of
//! any polynomial identity: `r0` and `q0` positive primes, `gcd(t0, q0) = 1`,
//! `r0 | q0 + 1 - t0`, `D*y0^2 = 4*q0 - t0^2`, and the embedding degree
//! certificate `{i <= k : r0 | q0^i - 1} = {k}` computed by modular
//! exponentiation. Everything else is tallied as a near miss by its first
//! failing check.
//!
//! Scans only evaluate arguments whose residues pass the integrality
//! profiles of `r` and `q`; other points are counted (they are non-integral
//! by proof) but never evaluated. Primality randomness above the
//! deterministic range is seeded per argument, so scan output is
//! deterministic for a fixed seed no matter how the range is partitioned
//! across threads.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::family::FamilyCandidate;
use crate::integrality::{integrality_profile, IntegralityProfile};
use crate::poly::QPoly;
use crate::primality::{is_prime_seeded, perfect_prime_power, regime, PrimalityRegime};
use crate::rational::Rational;

/// Certified concrete parameters at one argument.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveParams {
    pub x0: BigInt,
    pub t0: BigInt,
    pub r0: BigInt,
    pub q0: BigInt,
    pub y0: BigInt,
    pub h0: BigInt,
    pub k: u64,
    pub d: u64,
    /// `log q0 / log r0`.
    pub rho_numeric: f64,
    /// `k < (log2 r0)/8`, i.e. `r0 > 2^(8k)`, the classical guard that the
    /// pairing stays hard enough relative to the subgroup.
    pub k_bound_ok: bool,
    /// `t0 = 2`: the boundary at which such parameters describe
    /// supersingular curves.
    pub supersingular_boundary: bool,
    /// Which primality regime certified `r0` and `q0`.
    pub primality: PrimalityRegime,
}

impl CurveParams {
    pub fn to_json(&self) -> Value {
        json!({
            "x0": self.x0.to_string(),
            "t": self.t0.to_string(),
            "r": self.r0.to_string(),
            "q": self.q0.to_string(),
            "y": self.y0.to_string(),
            "h": self.h0.to_string(),
            "k": self.k,
            "D": self.d,
            "rho_numeric": self.rho_numeric,
            "k_bound_ok": self.k_bound_ok,
            "supersingular_boundary": self.supersingular_boundary,
            "primality_regime": match self.primality {
                PrimalityRegime::Deterministic => "deterministic",
                PrimalityRegime::Probabilistic => "miller-rabin-64-rounds",
            },
        })
    }
}

/// First check an argument fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    NonIntegral(&'static str),
    RNotPrime,
    QNotPrime,
    /// `q0 = p^e` with `e >= 2`: would satisfy the CM theorem but not the
    /// family definition, so tallied separately from plain composites.
    QPrimePower,
    TraceNotCoprime,
    CmIdentityFails,
    SubgroupOrderFails,
    CofactorMismatch,
    WrongEmbeddingDegree,
}

impl FailureReason {
    /// Stable histogram key.
    pub fn key(&self) -> String {
        match self {
            FailureReason::NonIntegral(which) => format!("{which} non-integral"),
            FailureReason::RNotPrime => "r not a positive prime".into(),
            FailureReason::QNotPrime => "q not a positive prime".into(),
            FailureReason::QPrimePower => "q is a prime power".into(),
            FailureReason::TraceNotCoprime => "gcd(t, q) > 1".into(),
            FailureReason::CmIdentityFails => "CM identity fails".into(),
            FailureReason::SubgroupOrderFails => "r does not divide q + 1 - t".into(),
            FailureReason::CofactorMismatch => "h mismatches (q + 1 - t)/r".into(),
            FailureReason::WrongEmbeddingDegree => "wrong embedding degree".into(),
        }
    }
}

/// Evaluates the family at `x0` and runs the full certificate.
pub fn instantiate_at(
    c: &FamilyCandidate,
    x0: &BigInt,
    seed: u64,
) -> Result<CurveParams, FailureReason> {
    let point_seed = derive_seed(seed, x0);
    let at = Rational::from_integer(x0.clone());
    let t0 = integer_value(&c.t, &at).ok_or(FailureReason::NonIntegral("t"))?;
    let r0 = integer_value(&c.r, &at).ok_or(FailureReason::NonIntegral("r"))?;
    let q0 = integer_value(&c.q, &at).ok_or(FailureReason::NonIntegral("q"))?;
    let y0 = integer_value(&c.y, &at).ok_or(FailureReason::NonIntegral("y"))?;
    let h0 = integer_value(&c.h, &at).ok_or(FailureReason::NonIntegral("h"))?;

    // Negative evaluations are failures, not absolute-valued: the search
    // targets large positive primes.
    if r0 < BigInt::from(2) || !is_prime_seeded(&r0, point_seed) {
        return Err(FailureReason::RNotPrime);
    }
    if q0 < BigInt::from(2) || !is_prime_seeded(&q0, point_seed) {
        if q0.is_positive() && perfect_prime_power(q0.magnitude()).is_some() {
            return Err(FailureReason::QPrimePower);
        }
        return Err(FailureReason::QNotPrime);
    }
    if !num_integer::gcd(t0.clone(), q0.clone()).is_one() {
        return Err(FailureReason::TraceNotCoprime);
    }
    // CM norm equation at the integer level
    if BigInt::from(c.d) * &y0 * &y0 != BigInt::from(4) * &q0 - &t0 * &t0 {
        return Err(FailureReason::CmIdentityFails);
    }
    let order: BigInt = &q0 + 1 - &t0;
    if !order.mod_floor(&r0).is_zero() {
        return Err(FailureReason::SubgroupOrderFails);
    }
    if &h0 * &r0 != order {
        return Err(FailureReason::CofactorMismatch);
    }
    if embedding_degree_set(&q0, &r0, c.k) != vec![c.k] {
        return Err(FailureReason::WrongEmbeddingDegree);
    }

    let k_bound_ok = r0 > (BigInt::one() << (8 * c.k as usize));
    let rho_numeric = log_ratio(&q0, &r0);
    let primality = match (regime(&r0), regime(&q0)) {
        (PrimalityRegime::Deterministic, PrimalityRegime::Deterministic) => {
            PrimalityRegime::Deterministic
        }
        _ => PrimalityRegime::Probabilistic,
    };
    Ok(CurveParams {
        x0: x0.clone(),
        supersingular_boundary: t0 == BigInt::from(2),
        t0,
        r0,
        q0,
        y0,
        h0,
        k: c.k,
        d: c.d,
        rho_numeric,
        k_bound_ok,
        primality,
    })
}

/// `{i in [1, k] : r | q^i - 1}`, by iterated modular multiplication.
pub fn embedding_degree_set(q: &BigInt, r: &BigInt, k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let q_mod = q.mod_floor(r);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = (&acc * &q_mod).mod_floor(r);
        if acc.is_one() {
            out.push(i);
        }
    }
    out
}

fn integer_value(f: &QPoly, at: &Rational) -> Option<BigInt> {
    let v = f.eval(at);
    v.is_integer().then(|| v.to_integer())
}

fn derive_seed(seed: u64, x0: &BigInt) -> u64 {
    let low = (x0.magnitude() % BigUint::from(u64::MAX))
        .to_u64()
        .unwrap_or(0);
    let sign = if x0.is_negative() {
        0x5851_F42D_4C95_7F2D
    } else {
        0
    };
    seed ^ low.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ sign
}

fn log_ratio(q: &BigInt, r: &BigInt) -> f64 {
    // Both are >= 2 here. Fall back to bit lengths if the values overflow f64.
    let (fq, fr) = (to_f64_log(q), to_f64_log(r));
    fq / fr
}

fn to_f64_log(n: &BigInt) -> f64 {
    match n.to_f64() {
        Some(v) if v.is_finite() && v > 0.0 => v.ln(),
        _ => n.bits() as f64 * std::f64::consts::LN_2,
    }
}

/// Outcome of a scan: certified hits plus an exact accounting of everything
/// else. Every considered argument is either a hit or lands in exactly one
/// near-miss bucket; profile-skipped arguments are bucketed by the profile
/// that excluded them without being evaluated.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub family: Option<String>,
    /// Contiguous argument intervals that were considered.
    pub windows: Vec<(BigInt, BigInt)>,
    pub seed: u64,
    pub hits: Vec<CurveParams>,
    pub near_misses: BTreeMap<String, u64>,
    /// Arguments excluded by an integrality profile without evaluation.
    pub skipped_by_profile: u64,
    /// Total arguments considered.
    pub scanned: u64,
}

impl ScanReport {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "windows": self
                .windows
                .iter()
                .map(|(lo, hi)| json!([lo.to_string(), hi.to_string()]))
                .collect::<Vec<_>>(),
            "seed": self.seed,
            "hits": self.hits.iter().map(CurveParams::to_json).collect::<Vec<_>>(),
            "near_misses": self.near_misses,
            "skipped_by_profile": self.skipped_by_profile,
            "scanned": self.scanned,
        })
    }
}

struct ProfilePair {
    r: ProfileSet,
    q: ProfileSet,
}

struct ProfileSet {
    d: BigInt,
    /// `None` when the modulus is too large to tabulate; then nothing is
    /// skipped and evaluation decides.
    good: Option<Vec<bool>>,
}

impl ProfileSet {
    fn new(profile: &IntegralityProfile) -> Self {
        let good = profile.d.to_usize().filter(|&d| d <= 1 << 24).map(|d| {
            let mut table = vec![false; d];
            for res in &profile.good_residues {
                if let Some(i) = res.to_usize() {
                    table[i] = true;
                }
            }
            table
        });
        ProfileSet {
            d: BigInt::from(profile.d.clone()),
            good,
        }
    }

    fn admits(&self, x0: &BigInt) -> bool {
        match &self.good {
            None => true,
            Some(table) => match x0.mod_floor(&self.d).to_usize() {
                Some(i) if i < table.len() => table[i],
                _ => true,
            },
        }
    }
}

fn scan_block(
    c: &FamilyCandidate,
    profiles: &ProfilePair,
    lo: i128,
    hi: i128,
    seed: u64,
) -> ScanReport {
    let mut hits = Vec::new();
    let mut near_misses: BTreeMap<String, u64> = BTreeMap::new();
    let mut skipped = 0u64;
    let mut scanned = 0u64;
    for x in lo..=hi {
        let x0 = BigInt::from(x);
        scanned += 1;
        if !profiles.r.admits(&x0) {
            *near_misses.entry("r non-integral".into()).or_insert(0) += 1;
            skipped += 1;
            continue;
        }
        if !profiles.q.admits(&x0) {
            *near_misses.entry("q non-integral".into()).or_insert(0) += 1;
            skipped += 1;
            continue;
        }
        match instantiate_at(c, &x0, seed) {
            Ok(params) => hits.push(params),
            Err(reason) => {
                *near_misses.entry(reason.key()).or_insert(0) += 1;
            }
        }
    }
    ScanReport {
        family: None,
        windows: vec![(BigInt::from(lo), BigInt::from(hi))],
        seed,
        hits,
        near_misses,
        skipped_by_profile: skipped,
        scanned,
    }
}

fn merge_reports(mut acc: ScanReport, other: ScanReport) -> ScanReport {
    acc.hits.extend(other.hits);
    for (key, count) in other.near_misses {
        *acc.near_misses.entry(key).or_insert(0) += count;
    }
    acc.skipped_by_profile += other.skipped_by_profile;
    acc.scanned += other.scanned;
    acc
}

/// Scans every integer in `[lo, hi]`. Blocks are dispatched in parallel;
/// hits are merged back in ascending `x0` order, so the report is
/// deterministic for fixed inputs and seed.
///
/// Panics if `lo > hi`.
pub fn scan_range(c: &FamilyCandidate, lo: &BigInt, hi: &BigInt, seed: u64) -> ScanReport {
    assert!(lo <= hi, "scan range must satisfy lo <= hi");
    let profiles = ProfilePair {
        r: ProfileSet::new(&integrality_profile(&c.r)),
        q: ProfileSet::new(&integrality_profile(&c.q)),
    };
    let mut report = match (lo.to_i128(), hi.to_i128()) {
        (Some(lo_i), Some(hi_i)) => {
            const BLOCK: i128 = 4096;
            let blocks: Vec<(i128, i128)> = {
                let mut out = Vec::new();
                let mut start = lo_i;
                while start <= hi_i {
                    let end = (start + BLOCK - 1).min(hi_i);
                    out.push((start, end));
                    start = end + 1;
                }
                out
            };
            blocks
                .into_par_iter()
                .map(|(a, b)| scan_block(c, &profiles, a, b, seed))
                .reduce_with(merge_reports)
                .unwrap_or_else(|| scan_block(c, &profiles, lo_i, hi_i, seed))
        }
        _ => {
            // Range beyond i128: walk sequentially.
            let mut acc: Option<ScanReport> = None;
            let mut x0 = lo.clone();
            while &x0 <= hi {
                let block = scan_bigint_point(c, &profiles, &x0, seed);
                acc = Some(match acc {
                    Some(a) => merge_reports(a, block),
                    None => block,
                });
                x0 += 1;
            }
            acc.expect("nonempty range")
        }
    };
    report.windows = vec![(lo.clone(), hi.clone())];
    report.hits.sort_by(|a, b| a.x0.cmp(&b.x0));
    report
}

fn scan_bigint_point(
    c: &FamilyCandidate,
    profiles: &ProfilePair,
    x0: &BigInt,
    seed: u64,
) -> ScanReport {
    let mut near_misses: BTreeMap<String, u64> = BTreeMap::new();
    let mut hits = Vec::new();
    let mut skipped = 0;
    if !profiles.r.admits(x0) {
        near_misses.insert("r non-integral".into(), 1);
        skipped = 1;
    } else if !profiles.q.admits(x0) {
        near_misses.insert("q non-integral".into(), 1);
        skipped = 1;
    } else {
        match instantiate_at(c, x0, seed) {
            Ok(params) => hits.push(params),
            Err(reason) => {
                near_misses.insert(reason.key(), 1);
            }
        }
    }
    ScanReport {
        family: None,
        windows: vec![(x0.clone(), x0.clone())],
        seed,
        hits,
        near_misses,
        skipped_by_profile: skipped,
        scanned: 1,
    }
}

/// Scans arguments whose `r`-value lands near the requested bit length
/// (inside `[2^(bits-1), 2^(bits+1)]`), on both sides of zero, stopping
/// after `count` hits. Arguments are visited in ascending order.
///
/// Panics if `bits < 8` or `count = 0`.
pub fn scan_bits(c: &FamilyCandidate, bits: u32, count: usize, seed: u64) -> ScanReport {
    assert!(bits >= 8, "bit targets below 8 are not meaningful");
    assert!(count >= 1, "requested hit count must be positive");
    let lo_target = BigInt::one() << (bits - 1) as usize;
    let hi_target = BigInt::one() << (bits + 1) as usize;

    let profiles = ProfilePair {
        r: ProfileSet::new(&integrality_profile(&c.r)),
        q: ProfileSet::new(&integrality_profile(&c.q)),
    };

    let mut windows = Vec::new();
    for side in [Side::Negative, Side::Positive] {
        if let Some((a, b)) = window_on_side(&c.r, side, &lo_target, &hi_target) {
            windows.push((a, b));
        }
    }
    windows.sort_by(|x, y| x.0.cmp(&y.0));

    let mut report = ScanReport {
        family: None,
        windows: windows.clone(),
        seed,
        hits: Vec::new(),
        near_misses: BTreeMap::new(),
        skipped_by_profile: 0,
        scanned: 0,
    };
    'outer: for (a, b) in windows {
        let mut x0 = a.clone();
        while x0 <= b {
            let point = scan_bigint_point(c, &profiles, &x0, seed);
            report = merge_reports(report, point);
            if report.hits.len() >= count {
                break 'outer;
            }
            x0 += 1;
        }
    }
    report.hits.sort_by(|a, b| a.x0.cmp(&b.x0));
    report.hits.truncate(count);
    report
}

#[derive(Clone, Copy)]
enum Side {
    Positive,
    Negative,
}

/// The contiguous argument interval on one side of zero where `r` lies in
/// `[lo, hi]`, assuming `r` is eventually monotone there. Returns arguments
/// in original (possibly negative) coordinates, ascending.
fn window_on_side(r: &QPoly, side: Side, lo: &BigInt, hi: &BigInt) -> Option<(BigInt, BigInt)> {
    // Mirror the polynomial for the negative side.
    let poly = match side {
        Side::Positive => r.clone(),
        Side::Negative => mirror(r),
    };
    if !poly.leading().is_positive() {
        return None; // diverges to -infinity; no large positive values
    }
    // Beyond the Cauchy bound of r' all roots of the derivative are passed,
    // so the polynomial is strictly increasing.
    let turn = cauchy_bound(&poly.derivative()).max(1);
    let eval = |x: &BigInt| poly.eval(&Rational::from_integer(x.clone()));

    // Find the first x >= turn with r(x) >= lo.
    let mut step = BigInt::one();
    let mut upper = BigInt::from(turn);
    while eval(&upper) < Rational::from_integer(lo.clone()) {
        upper = &upper + &step;
        step = &step * 2;
    }
    let mut a = BigInt::from(turn);
    let mut b = upper.clone();
    while a < b {
        let mid: BigInt = (&a + &b) / 2;
        if eval(&mid) >= Rational::from_integer(lo.clone()) {
            b = mid.clone();
        }
        if eval(&mid) < Rational::from_integer(lo.clone()) {
            a = mid + 1;
        }
    }
    let start = a;
    if eval(&start) > Rational::from_integer(hi.clone()) {
        // The window between lo and hi contains no integer argument beyond
        // the turn; check the pre-turn region directly below.
        return pre_turn_window(&poly, side, lo, hi, turn);
    }
    // Find the last x with r(x) <= hi.
    let mut step = BigInt::one();
    let mut upper = start.clone();
    while eval(&upper) <= Rational::from_integer(hi.clone()) {
        upper = &upper + &step;
        step = &step * 2;
    }
    let mut a = start.clone();
    let mut b = upper;
    while a < b {
        let mid: BigInt = (&a + &b + 1) / 2;
        if eval(&mid) <= Rational::from_integer(hi.clone()) {
            a = mid;
        } else {
            b = mid - 1;
        }
    }
    let end = a;
    Some(orient(side, start, end))
}

/// Scans the finite region before monotonicity kicks in for any argument
/// with `r` inside the window; returns its convex hull as the interval.
fn pre_turn_window(
    poly: &QPoly,
    side: Side,
    lo: &BigInt,
    hi: &BigInt,
    turn: i64,
) -> Option<(BigInt, BigInt)> {
    let mut matches = Vec::new();
    for x in 0..=turn {
        let v = poly.eval(&Rational::from_integer(BigInt::from(x)));
        if v >= Rational::from_integer(lo.clone()) && v <= Rational::from_integer(hi.clone()) {
            matches.push(BigInt::from(x));
        }
    }
    let first = matches.first()?.clone();
    let last = matches.last()?.clone();
    Some(orient(side, first, last))
}

fn orient(side: Side, a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    match side {
        Side::Positive => (a, b),
        Side::Negative => (-b, -a),
    }
}

/// `r(-x)`.
fn mirror(r: &QPoly) -> QPoly {
    QPoly::from_coeffs(
        r.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// Cauchy root bound: all real roots lie within `1 + max |a_i| / |a_n|`.
fn cauchy_bound(f: &QPoly) -> i64 {
    match f.degree() {
        None | Some(0) => 1,
        Some(n) => {
            let lead = f.coeff(n);
            let mut max = Rational::zero();
            for i in 0..n {
                let ratio = (f.coeff(i) / &lead).abs();
                if ratio > max {
                    max = ratio;
                }
            }
            let bound = Rational::one() + max;
            bound.ceil().to_integer().to_i64().unwrap_or(i64::MAX / 2) + 1
        }
    }
}
