//! Empirical prime counts: sign censuses, interval counts for the
//! normalisations `B_1(p)` and `c_1(p)`, progression filters, and convergence
//! reports against the limiting measures.
//!
//! Ratios always use π(x), the count of *all* primes up to x, as the
//! denominator. Bad primes are never counted in a numerator.

use std::borrow::Cow;
use std::cmp::Ordering;

use crate::arith;
use crate::coeffs::{self, CoefficientTable, Sign};
use crate::curves::ApTable;
use crate::error::{Error, Result};
use crate::measures::{self, Interval};

/// Anything that knows `b(p)` at every good prime up to some bound.
pub trait PrimeCoefficients {
    fn bound(&self) -> u64;

    /// `(p, b(p))` for all good `p ≤ bound`, ascending.
    fn good_prime_values(&self) -> Cow<'_, [(u64, i64)]>;

    fn bad_primes(&self) -> &[u64];

    /// π(x) for `x ≤ bound`.
    fn prime_count(&self, x: u64) -> u64 {
        let values = self.good_prime_values();
        let good = values.partition_point(|&(p, _)| p <= x) as u64;
        good + self.bad_primes().iter().filter(|&&p| p <= x).count() as u64
    }
}

impl PrimeCoefficients for ApTable {
    fn bound(&self) -> u64 {
        ApTable::bound(self)
    }

    fn good_prime_values(&self) -> Cow<'_, [(u64, i64)]> {
        Cow::Borrowed(self.entries())
    }

    fn bad_primes(&self) -> &[u64] {
        ApTable::bad_primes(self)
    }
}

impl PrimeCoefficients for CoefficientTable {
    fn bound(&self) -> u64 {
        CoefficientTable::bound(self)
    }

    fn good_prime_values(&self) -> Cow<'_, [(u64, i64)]> {
        let b = self.b_values();
        Cow::Owned(
            arith::sieve_primes(self.bound())
                .iter()
                .filter(|&p| !self.is_bad(p))
                .map(|p| (p, b[p as usize]))
                .collect(),
        )
    }

    fn bad_primes(&self) -> &[u64] {
        CoefficientTable::bad_primes(self)
    }
}

fn ensure_covers(src: &impl PrimeCoefficients, x: u64) -> Result<()> {
    if src.bound() < x {
        return Err(Error::OutOfRange {
            index: x,
            bound: src.bound(),
        });
    }
    Ok(())
}

/// Which normalisation of a prime coefficient is tested against an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `B_1(p) = b(p) / (2√p)`
    B1,
    /// `c_1(p) = c(p)√p / 2 = (1 - b(p)) / (2√p)`
    C1,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::B1 => "b1",
            Normalization::C1 => "c1",
        }
    }

    // both normalisations have the form s / (2√p) with integer s
    fn numerator(self, b_p: i64) -> i64 {
        match self {
            Normalization::B1 => b_p,
            Normalization::C1 => 1 - b_p,
        }
    }

    pub fn value(self, b_p: i64, p: u64) -> f64 {
        self.numerator(b_p) as f64 / (2.0 * (p as f64).sqrt())
    }
}

/// Compares `s / (2√p)` with `t`. Exact for `t ∈ {-1, 0, 1}`, floating point
/// otherwise.
fn compare_normalized(s: i64, p: u64, t: f64) -> Ordering {
    let sq = (s as i128) * (s as i128);
    let four_p = 4 * p as i128;
    if t == 0.0 {
        s.cmp(&0)
    } else if t == 1.0 {
        if s <= 0 {
            Ordering::Less
        } else {
            sq.cmp(&four_p)
        }
    } else if t == -1.0 {
        if s >= 0 {
            Ordering::Greater
        } else {
            four_p.cmp(&sq)
        }
    } else {
        let v = s as f64 / (2.0 * (p as f64).sqrt());
        v.partial_cmp(&t).unwrap_or(Ordering::Equal)
    }
}

/// Whether the chosen normalisation of `b(p)` lies in the interval.
pub fn normalized_in(interval: &Interval, norm: Normalization, b_p: i64, p: u64) -> bool {
    let s = norm.numerator(b_p);
    let above = match compare_normalized(s, p, interval.lo()) {
        Ordering::Greater => true,
        Ordering::Equal => interval.lo_closed(),
        Ordering::Less => false,
    };
    above
        && match compare_normalized(s, p, interval.hi()) {
            Ordering::Less => true,
            Ordering::Equal => interval.hi_closed(),
            Ordering::Greater => false,
        }
}

/// Counts of good primes `p ≤ x` by the sign of `c(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignCensus {
    pub x: u64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub n_zero: u64,
    pub n_good: u64,
    /// π(x), bad primes included.
    pub n_all: u64,
}

impl SignCensus {
    pub fn count(&self, sign: Sign) -> u64 {
        match sign {
            Sign::Pos => self.n_pos,
            Sign::Neg => self.n_neg,
            Sign::Zero => self.n_zero,
        }
    }

    pub fn ratio(&self, sign: Sign) -> f64 {
        if self.n_all == 0 {
            0.0
        } else {
            self.count(sign) as f64 / self.n_all as f64
        }
    }
}

pub fn sign_census(src: &impl PrimeCoefficients, x: u64) -> Result<SignCensus> {
    ensure_covers(src, x)?;
    let mut census = SignCensus {
        x,
        n_all: src.prime_count(x),
        ..Default::default()
    };
    for &(_, b) in src.good_prime_values().iter().take_while(|&&(p, _)| p <= x) {
        census.n_good += 1;
        match coeffs::cp_sign(b) {
            Sign::Pos => census.n_pos += 1,
            Sign::Neg => census.n_neg += 1,
            Sign::Zero => census.n_zero += 1,
        }
    }
    Ok(census)
}

/// Number of good `p ≤ x` whose normalisation lies in `interval`.
pub fn interval_count(
    src: &impl PrimeCoefficients,
    x: u64,
    interval: &Interval,
    norm: Normalization,
) -> Result<u64> {
    count_matching(src, x, &Predicate::Interval {
        interval: *interval,
        norm,
    })
}

/// Number of good `p ≤ x` with `c_1(p) ∈ interval` and `p ≡ a (mod q)`.
pub fn ap_filtered_census(
    src: &impl PrimeCoefficients,
    x: u64,
    q: u64,
    a: i64,
    interval: &Interval,
) -> Result<u64> {
    let predicate = Predicate::progression(q, a, *interval, Normalization::C1)?;
    count_matching(src, x, &predicate)
}

/// A property of a good prime and its coefficient.
#[derive(Debug, Clone, PartialEq)]
pub enum Predicate {
    /// Every good prime.
    All,
    Sign(Sign),
    Interval { interval: Interval, norm: Normalization },
    Progression {
        q: u64,
        a: i64,
        interval: Interval,
        norm: Normalization,
    },
}

impl Predicate {
    pub fn progression(q: u64, a: i64, interval: Interval, norm: Normalization) -> Result<Self> {
        if q == 0 || arith::gcd(a.rem_euclid(q as i64) as u64, q) != 1 {
            return Err(Error::NotCoprime { a, q });
        }
        Ok(Predicate::Progression {
            q,
            a: a.rem_euclid(q as i64),
            interval,
            norm,
        })
    }

    pub fn matches(&self, p: u64, b_p: i64) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Sign(s) => coeffs::cp_sign(b_p) == *s,
            Predicate::Interval { interval, norm } => normalized_in(interval, *norm, b_p, p),
            Predicate::Progression {
                q,
                a,
                interval,
                norm,
            } => (p % q) as i64 == *a && normalized_in(interval, *norm, b_p, p),
        }
    }

    /// Identifier used in report rows.
    pub fn id(&self) -> String {
        match self {
            Predicate::All => "all".to_string(),
            Predicate::Sign(s) => format!("sign_{}", s.as_str()),
            Predicate::Interval { interval, norm } => format!("{}_in_{interval}", norm.as_str()),
            Predicate::Progression {
                q,
                a,
                interval,
                norm,
            } => format!("{}_in_{interval}_mod_{q}_res_{a}", norm.as_str()),
        }
    }
}

fn count_matching(src: &impl PrimeCoefficients, x: u64, predicate: &Predicate) -> Result<u64> {
    ensure_covers(src, x)?;
    Ok(src
        .good_prime_values()
        .iter()
        .take_while(|&&(p, _)| p <= x)
        .filter(|&&(p, b)| predicate.matches(p, b))
        .count() as u64)
}

/// One checkpoint of a convergence report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub predicate_id: String,
    pub x: u64,
    pub count: u64,
    pub pi_x: u64,
    pub ratio: f64,
    pub theoretical: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub predicate_id: String,
    pub theoretical: f64,
    pub rows: Vec<ReportRow>,
}

impl DensityReport {
    pub fn last(&self) -> Option<&ReportRow> {
        self.rows.last()
    }
}

/// Powers of ten from 10^3 up to `bound`, followed by `bound` itself when it
/// is not one of them.
pub fn default_checkpoints(bound: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(1000u64), |&x| x.checked_mul(10))
        .take_while(|&x| x <= bound)
        .collect();
    if out.last() != Some(&bound) {
        out.push(bound);
    }
    out
}

/// Empirical ratio `#{good p ≤ x : predicate} / π(x)` at each checkpoint.
pub fn convergence_report(
    src: &impl PrimeCoefficients,
    checkpoints: &[u64],
    predicate: &Predicate,
    theoretical: f64,
) -> Result<DensityReport> {
    let ascending = checkpoints.windows(2).all(|w| w[0] < w[1]);
    if !ascending || checkpoints.last().is_some_and(|&x| x > src.bound()) {
        return Err(Error::BadCheckpoints { bound: src.bound() });
    }
    let values = src.good_prime_values();
    let predicate_id = predicate.id();
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut idx = 0;
    let mut count = 0u64;
    for &x in checkpoints {
        while idx < values.len() && values[idx].0 <= x {
            let (p, b) = values[idx];
            if predicate.matches(p, b) {
                count += 1;
            }
            idx += 1;
        }
        let pi_x = src.prime_count(x);
        let ratio = if pi_x == 0 { 0.0 } else { count as f64 / pi_x as f64 };
        rows.push(ReportRow {
            predicate_id: predicate_id.clone(),
            x,
            count,
            pi_x,
            ratio,
            theoretical,
            deviation: (ratio - theoretical).abs(),
        });
    }
    Ok(DensityReport {
        predicate_id,
        theoretical,
        rows,
    })
}

/// Rejects intervals for which the CM limit is not the continuous arcsine mass:
/// allowed are subintervals of `[-1, 0]` and closed intervals inside `(0, 1]`.
pub fn check_cm_interval(interval: &Interval) -> Result<()> {
    let nonpositive = interval.hi() <= 0.0;
    let closed_positive = interval.lo() > 0.0 && interval.is_closed();
    if nonpositive || closed_positive {
        Ok(())
    } else {
        Err(Error::AtomAmbiguity(interval.to_string()))
    }
}

/// Empirical density of good `p ≤ x` with `c(p)√p/2 ∈ interval`, paired with
/// the arcsine mass of the interval.
pub fn cm_interval_density(
    src: &impl PrimeCoefficients,
    x: u64,
    interval: &Interval,
) -> Result<(f64, f64)> {
    check_cm_interval(interval)?;
    let count = interval_count(src, x, interval, Normalization::C1)?;
    let pi_x = src.prime_count(x);
    let empirical = if pi_x == 0 { 0.0 } else { count as f64 / pi_x as f64 };
    Ok((empirical, measures::cm_continuous_mass(interval)))
}
