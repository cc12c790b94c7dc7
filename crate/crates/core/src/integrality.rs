//! Integrality of the prime exponents `c(p) = (1 - b(p))/p`.
//!
//! A nonzero integral `c(p)` needs `p ≤ |1 - b(p)| ≤ 2√p + 1`, which only
//! primes below `(1 + √2)² ≈ 5.83` can satisfy. Raising both sides to the
//! d-th power (for a Hecke field of degree d) leaves that threshold unchanged.

use crate::coeffs::{self, Rational};
use crate::density::PrimeCoefficients;
use crate::error::{Error, Result};

/// Primes that can carry a nonzero integral exponent.
pub const CANDIDATE_PRIMES: [u64; 3] = [2, 3, 5];

/// True iff `c(p)` is a nonzero integer, i.e. `p | 1 - b(p)` and `b(p) ≠ 1`.
pub fn is_integral_nonzero(b_p: i64, p: u64) -> bool {
    let diff = 1 - b_p;
    diff != 0 && diff.rem_euclid(p as i64) == 0
}

/// Largest real p with `p ≤ 2√p + 1`, the same for every field degree `d ≥ 1`.
pub fn candidate_bound(d: u32) -> f64 {
    assert!(d >= 1, "field degree must be positive");
    (1.0 + std::f64::consts::SQRT_2).powi(2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityResult {
    pub x: u64,
    /// `(p, c(p))` with `c(p)` a nonzero integer.
    pub nonzero_integral: Vec<(u64, Rational)>,
    /// Good primes with `c(p) = 0`.
    pub zero_set: Vec<u64>,
    pub candidate_bound: f64,
}

impl IntegralityResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "x": self.x,
            "nonzero_integral": self
                .nonzero_integral
                .iter()
                .map(|(p, c)| serde_json::json!([p, c.numer().to_string(), c.denom().to_string()]))
                .collect::<Vec<_>>(),
            "zero_set": self.zero_set,
            "candidate_primes": CANDIDATE_PRIMES,
        })
    }
}

/// Lists every good `p ≤ x` with `c(p)` zero or a nonzero integer.
///
/// A nonzero integral exponent above 5 cannot exist for a rational eigenform;
/// finding one means the input table is corrupt, and is reported as
/// [`Error::TheoremContradiction`].
pub fn scan(src: &impl PrimeCoefficients, x: u64) -> Result<IntegralityResult> {
    if src.bound() < x {
        return Err(Error::OutOfRange {
            index: x,
            bound: src.bound(),
        });
    }
    let mut nonzero_integral = Vec::new();
    let mut zero_set = Vec::new();
    for &(p, b) in src.good_prime_values().iter().take_while(|&&(p, _)| p <= x) {
        if b == 1 {
            zero_set.push(p);
        } else if is_integral_nonzero(b, p) {
            let c = coeffs::cp_exact(b, p);
            if !CANDIDATE_PRIMES.contains(&p) {
                return Err(Error::TheoremContradiction {
                    p,
                    value: c.to_string(),
                });
            }
            nonzero_integral.push((p, c));
        }
    }
    Ok(IntegralityResult {
        x,
        nonzero_integral,
        zero_set,
        candidate_bound: candidate_bound(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;
    use crate::curves::{ap_table, ApTable, EllipticCurve};

    #[test]
    fn integral_examples() {
        assert!(!is_integral_nonzero(1, 7));
        assert!(is_integral_nonzero(-1, 2));
        assert!(!is_integral_nonzero(-1, 3));
        assert!(is_integral_nonzero(-2, 3));
        assert!(is_integral_nonzero(4, 3));
    }

    #[test]
    fn agrees_with_exact_rational() {
        for p in arith::sieve_primes(500).iter() {
            let lim = (2.0 * (p as f64).sqrt()) as i64;
            for b in -lim..=lim {
                let c = coeffs::cp_exact(b, p);
                let by_rational = coeffs::is_integral(&c) && !num_traits::Zero::is_zero(&c);
                assert_eq!(is_integral_nonzero(b, p), by_rational, "b = {b}, p = {p}");
            }
        }
    }

    #[test]
    fn bound_is_independent_of_degree() {
        let b1 = candidate_bound(1);
        assert!((b1 - 5.828_427_124_746_19).abs() < 1e-12);
        assert_eq!(candidate_bound(7), b1);
        let candidates: Vec<u64> = arith::sieve_primes(b1 as u64).iter().collect();
        assert_eq!(candidates, CANDIDATE_PRIMES);
        // every Hasse-admissible b at p ≥ 7 misses divisibility
        for p in arith::sieve_primes(2000).iter().filter(|&p| p >= 7) {
            let lim = (2.0 * (p as f64).sqrt()) as i64;
            assert!((-lim..=lim).all(|b| !is_integral_nonzero(b, p)));
        }
    }

    #[test]
    fn scan_11a1() {
        let ap = ap_table(&EllipticCurve::new([0, -1, 1, -10, -20]).unwrap(), 10_000);
        let r = scan(&ap, 10_000).unwrap();
        assert!(r.nonzero_integral.is_empty());
        assert_eq!(r.zero_set.first(), Some(&5));
    }

    #[test]
    fn scan_flags_contradiction() {
        let curve = EllipticCurve::new([0, -1, 1, -10, -20]).unwrap();
        // a_7 = -6 is outside Hasse, so it only arises from a corrupt table
        let forged = ApTable::from_entries(&curve, 7, [(2, -2), (3, -1), (5, 1), (7, -6)]).unwrap();
        assert!(matches!(scan(&forged, 7), Err(Error::TheoremContradiction { p: 7, .. })));
    }

    #[test]
    fn json_shape() {
        // 53a1, a_2 = -1 so c(2) = 1
        let curve = EllipticCurve::new([1, -1, 1, 0, 0]).unwrap();
        let r = scan(&ap_table(&curve, 100), 100).unwrap();
        let v = r.to_json();
        assert_eq!(v["nonzero_integral"][0], serde_json::json!([2, "1", "1"]));
        assert_eq!(v["candidate_primes"], serde_json::json!([2, 3, 5]));
    }
}
