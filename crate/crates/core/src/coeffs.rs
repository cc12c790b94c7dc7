//! The exact coefficient dictionary `n ↦ (b(n), c(n))`.
//!
//! `b(n)` are the Fourier coefficients of the eigenform g, extended from the
//! prime values by Hecke multiplicativity. `c(n)` are the q-exponents of the
//! product `f = ∏ (1 - q^n)^c(n)` whose logarithmic derivative is g. The two
//! are tied by Möbius inversion:
//!
//! ```text
//! b(n)   = -Σ_{d|n} d·c(d)
//! n·c(n) = -Σ_{d|n} μ(d)·b(n/d)
//! ```
//!
//! All comparisons that decide signs or integrality are done on integers.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::curves::ApTable;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of a q-exponent `c(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
    Zero,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Pos => "pos",
            Sign::Neg => "neg",
            Sign::Zero => "zero",
        }
    }
}

/// Sign of `c(p) = (1 - b(p))/p`, decided by comparing `b(p)` with 1.
pub fn cp_sign(b_p: i64) -> Sign {
    match b_p.cmp(&1) {
        Ordering::Less => Sign::Pos,
        Ordering::Greater => Sign::Neg,
        Ordering::Equal => Sign::Zero,
    }
}

/// `c(p) = (1 - b(p))/p` in lowest terms.
pub fn cp_exact(b_p: i64, p: u64) -> Rational {
    rational(1 - b_p, p as i64)
}

/// `B_k(p) = b(p) / (2 p^(k - 1/2))`, rejecting values outside the Deligne bound.
pub fn normalize_st(b_p: i64, p: u64, k: u32) -> Result<f64> {
    assert!(k >= 1, "weight index k must be positive");
    // |b| ≤ 2 p^(k-1/2)  ⟺  b² ≤ 4 p^(2k-1)
    let lhs = BigInt::from(b_p) * BigInt::from(b_p);
    let rhs = BigInt::from(4) * num_traits::pow(BigInt::from(p), (2 * k - 1) as usize);
    if lhs > rhs {
        return Err(Error::DeligneBound { p, value: b_p, k });
    }
    let scale = 2.0 * (p as f64).powi(k as i32 - 1) * (p as f64).sqrt();
    Ok((b_p as f64 / scale).clamp(-1.0, 1.0))
}

/// `c_1(p) = c(p)·√p/2`, the Sato-Tate normalisation of the exponent.
pub fn c1(c_p: &Rational, p: u64) -> f64 {
    ratio_to_f64(c_p) * (p as f64).sqrt() / 2.0
}

/// `c_1(p)` straight from `b(p)`: `(1 - b)/(2√p)`.
pub fn c1_from_b(b_p: i64, p: u64) -> f64 {
    (1 - b_p) as f64 / (2.0 * (p as f64).sqrt())
}

pub(crate) fn ratio_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Extends prime values `b(p)` to all `1 ≤ n ≤ bound`.
///
/// Prime powers follow `b(p^(r+1)) = b(p)b(p^r) - p·b(p^(r-1))` at good
/// primes and `b(p^r) = b(p)^r` at bad ones; coprime arguments multiply.
/// Index 0 of the result is a placeholder 0.
pub fn extend_b(prime_values: &BTreeMap<u64, i64>, bad_primes: &[u64], bound: u64) -> Result<Vec<i64>> {
    let n = bound as usize;
    let mut b = vec![0i64; n + 1];
    if n == 0 {
        return Ok(b);
    }
    b[1] = 1;
    let spf = arith::smallest_prime_factors(n);
    for m in 2..=n {
        if spf[m] as usize != m {
            continue;
        }
        let p = m as u64;
        let bp = *prime_values.get(&p).ok_or(Error::MissingPrime { p, bound })?;
        let bad = bad_primes.binary_search(&p).is_ok();
        let (mut prev, mut cur) = (1i64, bp);
        let mut q = m;
        loop {
            b[q] = cur;
            match q.checked_mul(m) {
                Some(next) if next <= n => q = next,
                _ => break,
            }
            let following = if bad { bp * cur } else { bp * cur - p as i64 * prev };
            prev = cur;
            cur = following;
        }
    }
    for m in 2..=n {
        let p = spf[m] as usize;
        let mut pe = p;
        while (m / pe) % p == 0 {
            pe *= p;
        }
        if pe != m {
            b[m] = b[pe] * b[m / pe];
        }
    }
    Ok(b)
}

/// `c(n) = -(Σ_{d|n} μ(d) b(n/d)) / n`. `b` is indexed by n (index 0 unused).
pub fn c_from_b(b: &[i64], n: u64) -> Result<Rational> {
    check_index(b.len(), n)?;
    let sum: i64 = arith::divisors(n)
        .into_iter()
        .map(|d| arith::mobius(d) as i64 * b[(n / d) as usize])
        .sum();
    Ok(rational(-sum, n as i64))
}

/// `b(n) = -Σ_{d|n} d·c(d)`. `c` is indexed by n (index 0 unused).
pub fn b_from_c(c: &[Rational], n: u64) -> Result<Rational> {
    check_index(c.len(), n)?;
    let sum = arith::divisors(n)
        .into_iter()
        .fold(Rational::zero(), |acc, d| acc + &c[d as usize] * BigInt::from(d));
    Ok(-sum)
}

fn check_index(len: usize, n: u64) -> Result<()> {
    if n == 0 || n as usize >= len {
        return Err(Error::OutOfRange {
            index: n,
            bound: len.saturating_sub(1) as u64,
        });
    }
    Ok(())
}

/// `b(n)` and `c(n)` for every `1 ≤ n ≤ bound`, plus the bad primes of the
/// underlying curve. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    bound: u64,
    b: Vec<i64>,
    c: Vec<Rational>,
    bad_primes: Vec<u64>,
    weight_k: u32,
}

impl CoefficientTable {
    /// Builds the table from point-counted `a_p` plus values at the bad primes.
    ///
    /// Every bad prime up to `bound` must appear in `bad_values`; the error
    /// lists all that are missing.
    pub fn build(ap: &ApTable, bad_values: &BTreeMap<u64, i64>, bound: u64) -> Result<Self> {
        if ap.bound() < bound {
            // the first prime in (ap.bound, bound] is what is missing
            let p = arith::sieve_primes(bound)
                .iter()
                .find(|&p| p > ap.bound() && !ap.curve().is_bad(p))
                .unwrap_or(bound);
            return Err(Error::MissingPrime { p, bound });
        }
        let bad: Vec<u64> = ap.curve().bad_primes().to_vec();
        let missing: Vec<u64> = bad
            .iter()
            .copied()
            .filter(|&p| p <= bound && !bad_values.contains_key(&p))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingBadPrimes { primes: missing });
        }
        let mut values: BTreeMap<u64, i64> =
            ap.entries().iter().copied().filter(|&(p, _)| p <= bound).collect();
        values.extend(bad_values.iter().filter(|(&p, _)| p <= bound));
        let b = extend_b(&values, &bad, bound)?;
        Ok(Self::from_b(b, bad))
    }

    /// Builds the table from a dense `b` vector (index 0 ignored, `b[1]` must be 1).
    pub fn from_b(b: Vec<i64>, mut bad_primes: Vec<u64>) -> Self {
        let n = b.len().saturating_sub(1);
        assert!(n == 0 || b[1] == 1, "eigenform must be normalised, b(1) = 1");
        bad_primes.sort_unstable();
        let mu = arith::mobius_table(n);
        let mut acc = vec![0i64; n + 1];
        for d in 1..=n {
            if mu[d] == 0 {
                continue;
            }
            for (k, m) in (d..=n).step_by(d).enumerate() {
                acc[m] += mu[d] as i64 * b[k + 1];
            }
        }
        let c = acc
            .iter()
            .enumerate()
            .map(|(m, &s)| if m == 0 { Rational::zero() } else { rational(-s, m as i64) })
            .collect();
        Self {
            bound: n as u64,
            b,
            c,
            bad_primes,
            weight_k: 1,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn weight_k(&self) -> u32 {
        self.weight_k
    }

    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.bad_primes.binary_search(&p).is_ok()
    }

    pub fn b(&self, n: u64) -> Option<i64> {
        (n >= 1 && n <= self.bound).then(|| self.b[n as usize])
    }

    pub fn c(&self, n: u64) -> Option<&Rational> {
        (n >= 1 && n <= self.bound).then(|| &self.c[n as usize])
    }

    /// `b` indexed by n; entry 0 is a placeholder.
    pub fn b_values(&self) -> &[i64] {
        &self.b
    }

    /// `c` indexed by n; entry 0 is a placeholder.
    pub fn c_values(&self) -> &[Rational] {
        &self.c
    }
}

/// True when `c(n)` is an integer.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{ap_table, EllipticCurve};

    fn table_11a1(bound: u64) -> CoefficientTable {
        let curve = EllipticCurve::new([0, -1, 1, -10, -20]).unwrap();
        let ap = ap_table(&curve, bound);
        CoefficientTable::build(&ap, &BTreeMap::from([(11, 1)]), bound).unwrap()
    }

    fn table_32a2(bound: u64) -> CoefficientTable {
        let curve = EllipticCurve::new([0, 0, 0, -1, 0]).unwrap();
        let ap = ap_table(&curve, bound);
        CoefficientTable::build(&ap, &BTreeMap::from([(2, 0)]), bound).unwrap()
    }

    #[test]
    fn extend_b_11a1() {
        let t = table_11a1(20);
        assert_eq!(t.b(1), Some(1));
        assert_eq!(t.b(4), Some(2));
        assert_eq!(t.b(6), Some(2));
        // known q-expansion of 11a1: q - 2q^2 - q^3 + 2q^4 + q^5 + 2q^6 - 2q^7 - 2q^9 - 2q^10 + q^11 - 2q^12 + 4q^13
        let expect = [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4];
        assert_eq!(&t.b_values()[1..=13], &expect);
    }

    #[test]
    fn extend_b_reports_missing_prime() {
        let values = BTreeMap::from([(2, -2), (3, -1)]);
        match extend_b(&values, &[], 6) {
            Err(Error::MissingPrime { p: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn build_requires_bad_prime_values() {
        let curve = EllipticCurve::new([0, -1, 1, -10, -20]).unwrap();
        let ap = ap_table(&curve, 30);
        match CoefficientTable::build(&ap, &BTreeMap::new(), 30) {
            Err(Error::MissingBadPrimes { primes }) => assert_eq!(primes, vec![11]),
            other => panic!("unexpected {other:?}"),
        }
        // below the bad prime no override is needed
        assert!(CoefficientTable::build(&ap, &BTreeMap::new(), 10).is_ok());
    }

    #[test]
    fn c_from_b_examples() {
        let t = table_11a1(12);
        let b = t.b_values();
        assert_eq!(c_from_b(b, 1).unwrap(), rational(-1, 1));
        assert_eq!(c_from_b(b, 3).unwrap(), rational(2, 3));
        assert_eq!(c_from_b(b, 6).unwrap(), rational(-1, 1));
        assert_eq!(c_from_b(b, 2).unwrap(), rational(3, 2));
        assert!(c_from_b(b, 13).is_err());
    }

    #[test]
    fn b_from_c_examples() {
        let t = table_11a1(12);
        let c = t.c_values();
        assert_eq!(b_from_c(c, 1).unwrap(), rational(1, 1));
        assert_eq!(b_from_c(c, 2).unwrap(), rational(-2, 1));
        assert_eq!(b_from_c(c, 6).unwrap(), rational(2, 1));
    }

    #[test]
    fn cp_examples() {
        assert!(cp_exact(1, 5).is_zero());
        assert_eq!(cp_exact(0, 7), rational(1, 7));
        assert_eq!(cp_exact(-2, 7), rational(3, 7));
        assert_eq!(cp_sign(1), Sign::Zero);
        assert_eq!(cp_sign(-3), Sign::Pos);
        assert_eq!(cp_sign(2), Sign::Neg);
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_st(0, 5, 1).unwrap(), 0.0);
        let v = normalize_st(-2, 2, 1).unwrap();
        assert!((v + 0.707_106_781_186_547_5).abs() < 1e-12);
        assert!(matches!(normalize_st(5, 5, 1), Err(Error::DeligneBound { .. })));
        // 2√4 = 4 is attained exactly when p is a square
        assert_eq!(normalize_st(4, 4, 1).unwrap(), 1.0);
        assert!(normalize_st(4, 4, 1).is_ok());
        // weight 4 (k = 2): bound 2 p^(3/2)
        assert!(normalize_st(22, 5, 2).is_ok());
        assert!(normalize_st(23, 5, 2).is_err());
    }

    #[test]
    fn c1_examples() {
        assert_eq!(c1(&Rational::zero(), 5), 0.0);
        assert!((c1(&rational(2, 3), 3) - 0.577_350_269_189_625_8).abs() < 1e-12);
        let p = 7;
        let b7 = -2;
        let lhs = c1(&cp_exact(b7, p), p) + normalize_st(b7, p, 1).unwrap();
        assert!((lhs - 1.0 / (2.0 * (p as f64).sqrt())).abs() < 1e-12);
        assert!((c1_from_b(b7, p) - c1(&cp_exact(b7, p), p)).abs() < 1e-15);
    }

    #[test]
    fn table_invariants() {
        for t in [table_11a1(1000), table_32a2(1000)] {
            assert_eq!(t.b(1), Some(1));
            assert_eq!(t.c(1), Some(&rational(-1, 1)));
            for n in 1..=1000u64 {
                let c = t.c(n).unwrap();
                assert!((BigInt::from(n) % c.denom()).is_zero(), "den c({n}) ∤ {n}");
                assert_eq!(b_from_c(t.c_values(), n).unwrap(), rational(t.b(n).unwrap(), 1));
                assert_eq!(&c_from_b(t.b_values(), n).unwrap(), c);
            }
        }
    }

    #[test]
    fn prime_identities() {
        let curve = EllipticCurve::new([0, -1, 1, -10, -20]).unwrap();
        let ap = ap_table(&curve, 10_000);
        for &(p, b) in ap.entries() {
            let c = cp_exact(b, p);
            // b(p) = 1 - p c(p)
            assert_eq!(rational(1, 1) - &c * BigInt::from(p), rational(b, 1));
            assert_eq!(c.is_zero(), b == 1);
            let big_b = normalize_st(b, p, 1).unwrap();
            assert!((-1.0..=1.0).contains(&big_b));
            let threshold = 1.0 / (2.0 * (p as f64).sqrt());
            match cp_sign(b) {
                Sign::Pos => assert!(big_b < threshold),
                Sign::Neg => assert!(big_b > threshold),
                Sign::Zero => assert!((big_b - threshold).abs() < 1e-12),
            }
        }
    }
}
