//! Normalised coefficients B₁(p) = b(p)/(2√p) fall into intervals with
//! Sato-Tate frequency, also inside a fixed residue class mod q.
//!
//!     cargo run --release --example interval_equidistribution

use gmf_exponents::arith;
use gmf_exponents::curves::{self, EllipticCurve};
use gmf_exponents::density::{self, Normalization, PrimeCoefficients};
use gmf_exponents::measures::{self, Interval};
use gmf_exponents::Result;

pub fn run_example(x: u64) -> Result<()> {
    let e = EllipticCurve::new([0, -1, 1, -10, -20])?;
    let table = curves::ap_table_parallel(&e, x);
    let pi = table.prime_count(x) as f64;

    println!("B1 in I, x = {x}");
    for (lo, hi) in [(-1.0, -0.5), (-0.5, 0.0), (0.0, 0.5), (0.5, 1.0)] {
        let i = Interval::closed(lo, hi)?;
        let n = density::interval_count(&table, x, &i, Normalization::B1)?;
        println!("  {:<12} {:.4}   μ_ST = {:.4}", i.to_string(), n as f64 / pi, measures::st_mass(&i));
    }

    let i = Interval::closed(0.0, 1.0)?;
    let q = 5;
    println!("c1 in {i} and p ≡ a (mod {q}); expected μ_ST(I)/φ(q) = {:.4}", measures::st_mass(&i) / arith::euler_phi(q) as f64);
    for a in 1..q as i64 {
        let n = density::ap_filtered_census(&table, x, q, a, &i)?;
        println!("  a = {a}: {:.4}", n as f64 / pi);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example(100_000)
}
