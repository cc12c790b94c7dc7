//! Elementary number-theoretic kernels: prime sieve, Möbius function,
//! divisors, Legendre symbol and Euler's totient.
//!
//! Everything here is pure; [`PrimeSet`] is immutable once built.

/// All primes up to a bound, in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    bound: u64,
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    /// π(x) for any `x ≤ bound`. Values above the bound are clamped.
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

/// Sieve of Eratosthenes over odd numbers, one bit per odd candidate.
///
/// Bounds below 2 give an empty set.
pub fn sieve_primes(x: u64) -> PrimeSet {
    if x < 2 {
        return PrimeSet {
            bound: x,
            primes: Vec::new(),
        };
    }
    // bit i stands for the odd number 2i + 1
    let odd_count = ((x - 1) / 2 + 1) as usize;
    let mut composite = vec![0u64; odd_count.div_ceil(64)];
    composite[0] |= 1; // 1 is not prime
    let mut i = 1usize;
    loop {
        let p = 2 * i + 1;
        let sq = p * p;
        if sq as u64 > x {
            break;
        }
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            let mut j = sq / 2;
            while j < odd_count {
                composite[j / 64] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }

    let estimate = (x as f64 / (x as f64).ln() * 1.3) as usize + 8;
    let mut primes = Vec::with_capacity(estimate);
    primes.push(2);
    for (w, &word) in composite.iter().enumerate() {
        let mut free = !word;
        while free != 0 {
            let bit = free.trailing_zeros() as usize;
            free &= free - 1;
            let idx = w * 64 + bit;
            if idx >= odd_count {
                break;
            }
            primes.push(2 * idx as u64 + 1);
        }
    }
    PrimeSet { bound: x, primes }
}

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Prime factorisation by trial division, as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// μ(n) by trial factorisation. `mobius(0)` is treated as 0.
pub fn mobius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut sign = 1i8;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// μ(n) for every `n ≤ bound`, driven by a smallest-prime-factor table.
/// Index 0 holds 0.
pub fn mobius_table(bound: usize) -> Vec<i8> {
    let spf = smallest_prime_factors(bound);
    let mut mu = vec![0i8; bound + 1];
    if bound >= 1 {
        mu[1] = 1;
    }
    for n in 2..=bound {
        let p = spf[n] as usize;
        let m = n / p;
        mu[n] = if m % p == 0 { 0 } else { -mu[m] };
    }
    mu
}

/// Divisors of `n` in ascending order. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (a | p) by Euler's criterion.
///
/// Panics if `p` is not an odd prime.
pub fn legendre(a: i64, p: u64) -> i8 {
    assert!(p > 2 && is_prime(p), "legendre: modulus {p} is not an odd prime");
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    match mod_pow(r, (p - 1) / 2, p) {
        1 => 1,
        v if v == p - 1 => -1,
        v => unreachable!("Euler's criterion gave {v} mod {p}"),
    }
}

/// Kronecker symbol (d | p) for a prime `p`, including `p = 2`.
pub fn kronecker_prime(d: i64, p: u64) -> i8 {
    if p == 2 {
        if d % 2 == 0 {
            return 0;
        }
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    legendre(d, p)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Euler's totient φ(q).
pub fn euler_phi(q: u64) -> u64 {
    factorize(q)
        .into_iter()
        .fold(q, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(x: u64) -> Vec<u64> {
        (2..=x)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn sieve_small_bounds() {
        assert_eq!(sieve_primes(10).primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).primes(), &[2]);
        assert_eq!(sieve_primes(3).primes(), &[2, 3]);
        assert!(sieve_primes(1).is_empty());
        assert!(sieve_primes(0).is_empty());
        assert_eq!(sieve_primes(100).len(), 25);
    }

    #[test]
    fn sieve_matches_trial_division() {
        for x in [2, 3, 4, 63, 64, 65, 127, 128, 129, 1000, 10_000] {
            assert_eq!(sieve_primes(x).primes(), trial_division_primes(x), "x = {x}");
        }
    }

    #[test]
    fn sieve_handles_large_bound() {
        // π(10^7) = 664579
        let ps = sieve_primes(10_000_000);
        assert_eq!(ps.len(), 664_579);
        assert_eq!(ps.count_up_to(1_000_000), 78_498);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(7), -1);
    }

    #[test]
    fn mobius_table_agrees_and_sums_to_delta() {
        let table = mobius_table(10_000);
        for n in 1..=10_000u64 {
            assert_eq!(table[n as usize], mobius(n), "n = {n}");
            let sum: i64 = divisors(n).iter().map(|&d| table[d as usize] as i64).sum();
            assert_eq!(sum, (n == 1) as i64, "n = {n}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(1, 5), 1);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(10, 5), 0);
        assert_eq!(legendre(-1, 7), -1);
        assert_eq!(legendre(-1, 13), 1);
    }

    #[test]
    #[should_panic]
    fn legendre_rejects_even_modulus() {
        legendre(3, 2);
    }

    #[test]
    fn legendre_matches_square_table() {
        for p in sieve_primes(200).iter().skip(1) {
            let squares: Vec<u64> = (1..p).map(|y| y * y % p).collect();
            for a in 0..p {
                let expect = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a as i64, p), expect, "({a} | {p})");
            }
        }
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker_prime(-4, 2), 0);
        assert_eq!(kronecker_prime(-7, 2), 1);
        assert_eq!(kronecker_prime(-3, 2), -1);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(12), 4);
        for q in 1..500u64 {
            let direct = (1..=q).filter(|&r| gcd(r, q) == 1).count() as u64;
            assert_eq!(euler_phi(q), direct, "q = {q}");
        }
    }

    #[test]
    fn factorize_roundtrip() {
        for n in 1..2000u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn legendre_is_euler_criterion(a in -100_000i64..100_000, idx in 1usize..1000) {
                let primes = sieve_primes(8000);
                let p = primes.primes()[idx];
                let e = mod_pow(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let l = legendre(a, p);
                let as_residue = match l { 0 => 0, 1 => 1, _ => p - 1 };
                prop_assert_eq!(e, as_residue);
            }

            #[test]
            fn phi_multiplicative(m in 1u64..5000, n in 1u64..5000) {
                prop_assume!(gcd(m, n) == 1);
                prop_assert_eq!(euler_phi(m * n), euler_phi(m) * euler_phi(n));
            }
        }
    }
}
