//! Truncated power series in q with exact rational coefficients.
//!
//! Connects the product `f = ∏_{n≥1} (1 - q^n)^c(n)` (normalised so that
//! `a(0) = 1`) with the eigenform `g = Σ b(n) q^n` through
//! `g = q·f'/f`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::coeffs::{self, CoefficientTable, Rational};
use crate::error::{Error, Result};

/// `Σ_{k=0}^{order} coeffs[k] q^k + O(q^(order+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Takes the coefficients `a(0), …, a(order)`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_constant_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul_truncated(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.mul_truncated(rhs)
    }
}

/// `g = Σ_{n=1}^{order} b(n) q^n`. `b` is indexed by n; `b[0]` is ignored.
pub fn series_from_b(b: &[i64], order: usize) -> Result<PowerSeries> {
    if b.len() <= order {
        return Err(Error::OutOfRange {
            index: order as u64,
            bound: b.len().saturating_sub(1) as u64,
        });
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rational::zero());
    coeffs.extend(b[1..=order].iter().map(|&v| coeffs::rational(v, 1)));
    Ok(PowerSeries { coeffs })
}

/// Coefficients of `(1 - u)^e = exp(e·log(1 - u))` up to `u^terms`.
///
/// With `L = log(1 - u) = -Σ u^j / j`, the ODE `F' = F·L'` gives
/// `k F_k = Σ_{j=1}^{k} j L_j F_{k-j} = -e Σ_{i<k} F_i`.
fn binomial_power(exponent: &Rational, terms: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(terms + 1);
    out.push(Rational::one());
    let mut prefix = Rational::one();
    for k in 1..=terms {
        let next = -(exponent * &prefix) / BigInt::from(k);
        prefix += &next;
        out.push(next);
    }
    out
}

fn check_len<T>(v: &[T], order: usize) -> Result<()> {
    if v.len() <= order {
        return Err(Error::OutOfRange {
            index: order as u64,
            bound: v.len().saturating_sub(1) as u64,
        });
    }
    Ok(())
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// `f = ∏_{n=1}^{order} (1 - q^n)^c(n)` truncated at `q^order`, with `a(0) = 1`.
/// `c` is indexed by n; `c[0]` is ignored.
///
/// Computed as `exp(L)` with `L = Σ_n c(n)·log(1 - q^n)`, whose coefficients
/// satisfy `k·L_k = -Σ_{d|k} d·c(d)`. The exponential follows from
/// `f' = f·L'`, i.e. `k a_k = Σ_{j=1}^{k} (j L_j) a_{k-j}`, run over the
/// integers `A_k = D·a_k` with the fixed denominator `D = order!·M^order`
/// (`M` clears the denominators of `j L_j`), so every step divides exactly.
pub fn product_expand(c: &[Rational], order: usize) -> Result<PowerSeries> {
    check_len(c, order)?;
    // j·L_j for j = 1..=order
    let mut weights = vec![Rational::zero(); order + 1];
    for (d, cd) in c.iter().enumerate().take(order + 1).skip(1) {
        if cd.is_zero() {
            continue;
        }
        let term = cd * BigInt::from(d);
        for j in (d..=order).step_by(d) {
            weights[j] -= &term;
        }
    }
    let m = lcm_of_denominators(weights.iter().skip(1));
    let mu: Vec<BigInt> = weights
        .iter()
        .map(|w| (w * &m).to_integer())
        .collect();
    let mut denom = num_traits::pow(m.clone(), order);
    for k in 2..=order {
        denom *= k;
    }
    let mut scaled: Vec<BigInt> = Vec::with_capacity(order + 1);
    scaled.push(denom.clone());
    for k in 1..=order {
        let mut sum = BigInt::zero();
        for j in 1..=k {
            if !mu[j].is_zero() {
                sum += &mu[j] * &scaled[k - j];
            }
        }
        let divisor = &m * k;
        debug_assert!((&sum % &divisor).is_zero());
        scaled.push(sum / divisor);
    }
    let coeffs = scaled
        .into_iter()
        .map(|a| Rational::new(a, denom.clone()))
        .collect();
    Ok(PowerSeries { coeffs })
}

/// Same product as [`product_expand`], multiplying in one factor
/// `(1 - q^n)^c(n) = exp(c(n)·log(1 - q^n))` at a time in rational
/// arithmetic. Much slower; kept as an independent reference.
pub fn product_expand_factorwise(c: &[Rational], order: usize) -> Result<PowerSeries> {
    check_len(c, order)?;
    let mut acc = PowerSeries::one(order).coeffs;
    for (n, exponent) in c.iter().enumerate().take(order + 1).skip(1) {
        if exponent.is_zero() {
            continue;
        }
        let factor = binomial_power(exponent, order / n);
        // multiply in place by Σ factor[j] q^(n j), highest degree first
        for k in (n..=order).rev() {
            let mut sum = Rational::zero();
            for (j, fj) in factor.iter().enumerate().skip(1).take(k / n) {
                let a = &acc[k - n * j];
                if !a.is_zero() {
                    sum += fj * a;
                }
            }
            acc[k] += sum;
        }
    }
    Ok(PowerSeries { coeffs: acc })
}

/// `q·f'/f`, which is `(1/2πi) f'/f` written as a q-series.
///
/// Solves `g_k = k a_k - Σ_{j<k} g_j a_{k-j}` (after scaling `a_0` to 1).
/// While the `g_j` stay integral the sums run over the integers `D·a_k`
/// for a common denominator `D`; the first non-integral `g_k` switches the
/// rest of the computation to plain rational arithmetic.
pub fn log_derivative(f: &PowerSeries) -> Result<PowerSeries> {
    if f.coeffs[0].is_zero() {
        return Err(Error::NonUnitConstant);
    }
    let a: Vec<Rational> = if f.coeffs[0].is_one() {
        f.coeffs.clone()
    } else {
        let inv = f.coeffs[0].recip();
        f.coeffs.iter().map(|v| v * &inv).collect()
    };
    let n = a.len();
    let denom = lcm_of_denominators(a.iter());
    let scaled: Vec<BigInt> = a.iter().map(|v| (v * &denom).to_integer()).collect();

    let mut g = vec![Rational::zero(); n];
    let mut int_g = vec![BigInt::zero(); n];
    let mut k = 1;
    while k < n {
        let mut x = &scaled[k] * k;
        for j in 1..k {
            if !int_g[j].is_zero() {
                x -= &int_g[j] * &scaled[k - j];
            }
        }
        if !(&x % &denom).is_zero() {
            break;
        }
        int_g[k] = x / &denom;
        g[k] = Rational::from_integer(int_g[k].clone());
        k += 1;
    }
    for k in k..n {
        let mut acc = &a[k] * BigInt::from(k);
        for j in 1..k {
            if !g[j].is_zero() && !a[k - j].is_zero() {
                acc -= &g[j] * &a[k - j];
            }
        }
        g[k] = acc;
    }
    Ok(PowerSeries { coeffs: g })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundTrip {
    pub order: usize,
    /// First index where `q·f'/f` and `g` differ.
    pub first_mismatch: Option<usize>,
}

impl RoundTrip {
    pub fn is_exact(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the logarithmic derivative of the exponent product with the
/// eigenform series, coefficient by coefficient.
pub fn roundtrip_verify(table: &CoefficientTable, order: usize) -> Result<RoundTrip> {
    roundtrip_from_parts(table.b_values(), table.c_values(), order)
}

/// As [`roundtrip_verify`], on raw `b` and `c` vectors (both indexed by n).
pub fn roundtrip_from_parts(b: &[i64], c: &[Rational], order: usize) -> Result<RoundTrip> {
    let g = series_from_b(b, order)?;
    let f = product_expand(c, order)?;
    let lhs = log_derivative(&f)?;
    let first_mismatch = (0..=order).find(|&k| lhs.coeff(k) != g.coeff(k));
    Ok(RoundTrip {
        order,
        first_mismatch,
    })
}

/// Smallest `n ≥ 1` with a non-integral coefficient `a(n)`, if any.
pub fn integrality_probe(f: &PowerSeries) -> Option<usize> {
    (1..=f.order()).find(|&k| !coeffs::is_integral(f.coeff(k)))
}
