//! Rational elliptic curves in long Weierstrass form and their traces of
//! Frobenius `a_p = p + 1 - #E(F_p)`, which are the prime coefficients
//! `b(p)` of the attached weight-2 eigenform.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{self, PrimeSet};
use crate::error::{Error, Result};

/// Trial division limit used when factoring a model's discriminant.
const FACTOR_LIMIT: u128 = 10_000_000;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    a: [i64; 5],
    label: Option<String>,
    bad_primes: Vec<u64>,
    cm_discriminant: Option<i64>,
}

impl EllipticCurve {
    /// Builds a curve, taking the bad primes to be the primes dividing the
    /// discriminant of this model.
    pub fn new(a_invariants: [i64; 5]) -> Result<Self> {
        let disc = discriminant(&a_invariants);
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        let bad_primes = prime_support(&disc)?;
        Ok(Self {
            a: a_invariants,
            label: None,
            bad_primes,
            cm_discriminant: None,
        })
    }

    /// Builds a curve with an explicit bad-prime set. The model must still be
    /// nonsingular.
    pub fn with_bad_primes(a_invariants: [i64; 5], mut bad_primes: Vec<u64>) -> Result<Self> {
        if discriminant(&a_invariants).is_zero() {
            return Err(Error::SingularCurve);
        }
        bad_primes.sort_unstable();
        bad_primes.dedup();
        Ok(Self {
            a: a_invariants,
            label: None,
            bad_primes,
            cm_discriminant: None,
        })
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Declares CM by an order in the imaginary quadratic field of the given
    /// (negative) discriminant. CM is never detected automatically.
    pub fn with_cm(mut self, discriminant: i64) -> Self {
        self.cm_discriminant = Some(discriminant);
        self
    }

    pub fn a_invariants(&self) -> [i64; 5] {
        self.a
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.bad_primes.binary_search(&p).is_ok()
    }

    pub fn cm_discriminant(&self) -> Option<i64> {
        self.cm_discriminant
    }

    pub fn is_cm(&self) -> bool {
        self.cm_discriminant.is_some()
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.a)
    }

    /// `p + 1 - #Ẽ(F_p)` for the reduction of this model, singular or not.
    ///
    /// At good primes this is `a_p`. At bad primes of a model that is minimal
    /// there it is the local coefficient (1 split, -1 nonsplit, 0 additive).
    pub fn reduction_trace(&self, p: u64) -> i64 {
        if p <= 3 {
            return p as i64 + 1 - self.enumerate_points(p) as i64;
        }
        let (a, b) = self.short_model(p);
        -legendre_sum(a, b, p)
    }

    // Affine solutions of the long equation over F_p, plus the point at infinity.
    fn enumerate_points(&self, p: u64) -> u64 {
        let m = p as i64;
        let [a1, a2, a3, a4, a6] = self.a.map(|v| v.rem_euclid(m));
        let mut count = 1;
        for x in 0..m {
            let rhs = (((x + a2) * x + a4) * x + a6).rem_euclid(m);
            for y in 0..m {
                if (y * y + a1 * x * y + a3 * y - rhs).rem_euclid(m) == 0 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Coefficients `(A, B)` of `y^2 = x^3 + Ax + B` isomorphic to the model
    /// over F_p, for p > 3: `A = -27 c4`, `B = -54 c6`.
    fn short_model(&self, p: u64) -> (u64, u64) {
        let [a1, a2, a3, a4, a6] = self.a.map(i128::from);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let m = p as i128;
        let (b2, b4, b6) = (b2.rem_euclid(m), b4.rem_euclid(m), b6.rem_euclid(m));
        let c4 = (b2 * b2 - 24 * b4).rem_euclid(m);
        let c6 = ((-b2 * b2 % m) * b2 + 36 * b2 * b4 % m - 216 * b6).rem_euclid(m);
        ((-27 * c4).rem_euclid(m) as u64, (-54 * c6).rem_euclid(m) as u64)
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.a;
        match &self.label {
            Some(l) => write!(f, "{l} [{a1},{a2},{a3},{a4},{a6}]"),
            None => write!(f, "[{a1},{a2},{a3},{a4},{a6}]"),
        }
    }
}

/// Discriminant of a long Weierstrass model.
pub fn discriminant(a: &[i64; 5]) -> BigInt {
    let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
    let b2 = &a1 * &a1 + 4 * &a2;
    let b4 = 2 * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + 4 * &a6;
    let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
    let lead: BigInt = &b2 * &b2 * &b8;
    -lead - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
}

fn prime_support(disc: &BigInt) -> Result<Vec<u64>> {
    let too_big = || Error::UnfactoredDiscriminant(disc.to_i128().unwrap_or(i128::MAX));
    let mut n = disc.abs().to_u128().ok_or_else(too_big)?;
    let mut primes = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n && d <= FACTOR_LIMIT {
        if n % d == 0 {
            primes.push(d as u64);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        // Any cofactor left here is prime only if trial division ran past its square root.
        if d * d <= n {
            return Err(too_big());
        }
        primes.push(u64::try_from(n).map_err(|_| too_big())?);
    }
    Ok(primes)
}

/// `sum over x in F_p of (x^3 + Ax + B | p)`.
///
/// Uses a quadratic-character table for p built once per call; the result is
/// the same as summing Euler-criterion Legendre symbols, at O(p) cost.
fn legendre_sum(a: u64, b: u64, p: u64) -> i64 {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=(p - 1) / 2 {
        chi[(y * y % p) as usize] = 1;
    }
    let mut sum = 0i64;
    for x in 0..p {
        let v = ((x * x % p + a) % p * x + b) % p;
        sum += chi[v as usize] as i64;
    }
    sum
}

/// Trace of Frobenius at a good prime.
pub fn ap(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if curve.is_bad(p) {
        return Err(Error::BadPrime { p });
    }
    let t = curve.reduction_trace(p);
    assert!(
        (t as i128) * (t as i128) <= 4 * p as i128,
        "Hasse bound violated: a_{p} = {t} on {curve}"
    );
    Ok(t)
}

/// `a_p` for every good prime up to a bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ApTable {
    curve: EllipticCurve,
    bound: u64,
    entries: Vec<(u64, i64)>,
    bad_below: Vec<u64>,
}

impl ApTable {
    /// Assembles a table from externally sourced values (e.g. a CSV import).
    /// Every good prime up to `bound` must be present.
    pub fn from_entries(
        curve: &EllipticCurve,
        bound: u64,
        values: impl IntoIterator<Item = (u64, i64)>,
    ) -> Result<Self> {
        let map: std::collections::BTreeMap<u64, i64> = values.into_iter().collect();
        let mut entries = Vec::new();
        for p in arith::sieve_primes(bound).iter() {
            if curve.is_bad(p) {
                continue;
            }
            let v = *map.get(&p).ok_or(Error::MissingPrime { p, bound })?;
            entries.push((p, v));
        }
        Ok(Self::assemble(curve, bound, entries))
    }

    fn assemble(curve: &EllipticCurve, bound: u64, entries: Vec<(u64, i64)>) -> Self {
        let bad_below = curve
            .bad_primes()
            .iter()
            .copied()
            .filter(|&p| p <= bound)
            .collect();
        Self {
            curve: curve.clone(),
            bound,
            entries,
            bad_below,
        }
    }

    pub fn curve(&self) -> &EllipticCurve {
        &self.curve
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `(p, a_p)` in ascending order of p.
    pub fn entries(&self) -> &[(u64, i64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: u64) -> Option<i64> {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Bad primes at or below the table bound.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_below
    }
}

/// Computes `a_p` for all good primes `p ≤ x`, one prime after another.
pub fn ap_table(curve: &EllipticCurve, x: u64) -> ApTable {
    let primes = arith::sieve_primes(x);
    let entries = good_primes(curve, &primes)
        .map(|p| (p, ap(curve, p).expect("good prime")))
        .collect();
    ApTable::assemble(curve, x, entries)
}

/// Same as [`ap_table`], fanning primes out over the current rayon pool.
pub fn ap_table_parallel(curve: &EllipticCurve, x: u64) -> ApTable {
    let primes = arith::sieve_primes(x);
    let good: Vec<u64> = good_primes(curve, &primes).collect();
    let entries = good
        .par_iter()
        .map(|&p| (p, ap(curve, p).expect("good prime")))
        .collect();
    ApTable::assemble(curve, x, entries)
}

fn good_primes<'a>(curve: &'a EllipticCurve, primes: &'a PrimeSet) -> impl Iterator<Item = u64> + 'a {
    primes.iter().filter(move |&p| !curve.is_bad(p))
}

/// How a rational prime decomposes in an imaginary quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Decomposition of `p` in the quadratic field of discriminant `d`, read off
/// the Kronecker symbol `(d | p)`.
pub fn splitting(p: u64, d: i64) -> Splitting {
    match arith::kronecker_prime(d, p) {
        1 => Splitting::Split,
        -1 => Splitting::Inert,
        _ => Splitting::Ramified,
    }
}

/// `Some(true)` if `p` is inert, `Some(false)` if split, `None` if ramified.
pub fn is_inert(p: u64, d: i64) -> Option<bool> {
    match splitting(p, d) {
        Splitting::Inert => Some(true),
        Splitting::Split => Some(false),
        Splitting::Ramified => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_11a1() -> EllipticCurve {
        EllipticCurve::new([0, -1, 1, -10, -20]).unwrap()
    }

    fn curve_32a2() -> EllipticCurve {
        EllipticCurve::new([0, 0, 0, -1, 0]).unwrap().with_cm(-4)
    }

    // Full O(p^2) enumeration on the long model, independent of the short-model path.
    fn brute_force_ap(c: &EllipticCurve, p: u64) -> i64 {
        let m = p as i64;
        let [a1, a2, a3, a4, a6] = c.a_invariants();
        let mut n = 1i64;
        for x in 0..m {
            for y in 0..m {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs - rhs).rem_euclid(m) == 0 {
                    n += 1;
                }
            }
        }
        m + 1 - n
    }

    #[test]
    fn discriminants_and_bad_primes() {
        assert_eq!(curve_11a1().discriminant(), BigInt::from(-161_051));
        assert_eq!(curve_11a1().bad_primes(), &[11]);
        assert_eq!(curve_32a2().discriminant(), BigInt::from(64));
        assert_eq!(curve_32a2().bad_primes(), &[2]);
        let c36 = EllipticCurve::new([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(c36.bad_primes(), &[2, 3]);
    }

    #[test]
    fn singular_model_rejected() {
        assert!(matches!(
            EllipticCurve::new([0, 0, 0, 0, 0]),
            Err(Error::SingularCurve)
        ));
    }

    #[test]
    fn ap_examples() {
        assert_eq!(ap(&curve_32a2(), 5).unwrap(), -2);
        assert_eq!(ap(&curve_32a2(), 3).unwrap(), 0);
        assert_eq!(ap(&curve_11a1(), 2).unwrap(), -2);
        assert!(matches!(ap(&curve_11a1(), 11), Err(Error::BadPrime { p: 11 })));
    }

    #[test]
    fn table_examples() {
        let t = ap_table(&curve_11a1(), 10);
        assert_eq!(t.entries(), &[(2, -2), (3, -1), (5, 1), (7, -2)]);
        let t = ap_table(&curve_32a2(), 10);
        assert_eq!(t.entries(), &[(3, 0), (5, -2), (7, 0)]);
        assert!(ap_table(&curve_32a2(), 2).is_empty());
        assert_eq!(ap_table(&curve_32a2(), 2).bad_primes(), &[2]);
    }

    #[test]
    fn parallel_table_matches_sequential() {
        let c = curve_11a1();
        assert_eq!(ap_table(&c, 5000), ap_table_parallel(&c, 5000));
    }

    #[test]
    fn legendre_sum_matches_enumeration() {
        for c in [curve_11a1(), curve_32a2()] {
            for p in arith::sieve_primes(400).iter().filter(|&p| !c.is_bad(p)) {
                assert_eq!(ap(&c, p).unwrap(), brute_force_ap(&c, p), "{c} at {p}");
            }
        }
    }

    #[test]
    fn reduction_trace_at_bad_primes() {
        // split multiplicative at 11, additive at 2
        assert_eq!(curve_11a1().reduction_trace(11), 1);
        assert_eq!(curve_32a2().reduction_trace(2), 0);
    }

    #[test]
    fn hasse_bound_to_ten_thousand() {
        for (p, a) in ap_table(&curve_11a1(), 10_000).entries() {
            assert!(a * a <= 4 * *p as i64);
        }
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(is_inert(3, -4), Some(true));
        assert_eq!(is_inert(5, -4), Some(false));
        assert_eq!(is_inert(7, -3), Some(false));
        assert_eq!(is_inert(5, -3), Some(true));
        assert_eq!(is_inert(3, -3), None);
        assert_eq!(splitting(2, -4), Splitting::Ramified);
    }
}
