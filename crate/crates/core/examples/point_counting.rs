//! Frobenius traces a_p of an elliptic curve by point counting, checked
//! against the Hasse bound, plus how primes split in a CM field.
//!
//!     cargo run --release --example point_counting

use gmf_exponents::curves::{self, splitting, EllipticCurve};
use gmf_exponents::Result;

pub fn run_example() -> Result<()> {
    // y² + y = x³ - x² - 10x - 20
    let e = EllipticCurve::new([0, -1, 1, -10, -20])?.labeled("11a1");
    println!("{}: discriminant {}, bad primes {:?}", e.label().unwrap(), e.discriminant(), e.bad_primes());

    let table = curves::ap_table(&e, 50);
    for &(p, a) in table.entries() {
        println!("  a_{p:<2} = {a:>3}   |a_p| ≤ 2√p: {}", (a * a) as u64 <= 4 * p);
    }
    println!("  at the bad prime 11 the local trace is {}", e.reduction_trace(11));
    assert_eq!(curves::ap(&e, 13)?, 4);
    assert!(curves::ap(&e, 11).is_err());

    // y² = x³ - x has CM by Z[i]: a_p = 0 exactly when p is inert in Q(i)
    let cm = EllipticCurve::new([0, 0, 0, -1, 0])?.with_cm(-4);
    for p in [3, 5, 7, 11, 13, 17, 19] {
        println!("  p = {p:>2}: {:?}, a_p = {}", splitting(p, -4), curves::ap(&cm, p)?);
    }

    let big = curves::ap_table_parallel(&e, 100_000);
    println!("{} traces up to 10^5 (parallel)", big.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
