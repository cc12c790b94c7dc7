//! From Hecke eigenvalues b(n) to the exponents c(n) of
//! f = ∏ (1 - q^n)^c(n), and back through the divisor sum.
//!
//!     cargo run --release --example coefficient_inversion

use std::collections::BTreeMap;

use gmf_exponents::coeffs::{self, CoefficientTable};
use gmf_exponents::curves::{self, EllipticCurve};
use gmf_exponents::Result;

pub fn run_example() -> Result<()> {
    let e = EllipticCurve::new([0, -1, 1, -10, -20])?;
    let bound = 1000;
    // a_11 = 1: split multiplicative reduction
    let bad = BTreeMap::from([(11, 1)]);
    let table = CoefficientTable::build(&curves::ap_table(&e, bound), &bad, bound)?;

    println!(" n    b(n)   c(n)");
    for n in 1..=12 {
        println!("{n:>2} {:>6}   {}", table.b(n).unwrap(), table.c(n).unwrap());
    }

    // b(p) = 1 - p c(p), so the sign of c(p) is the side of 1 that b(p) is on
    for p in [2, 3, 5, 7] {
        let b = table.b(p).unwrap();
        println!("c({p}) = {} is {}", coeffs::cp_exact(b, p), coeffs::cp_sign(b).as_str());
    }

    let b = table.b_values();
    for n in [360, 997, 1000] {
        let back = coeffs::b_from_c(table.c_values(), n)?;
        assert_eq!(back, coeffs::rational(b[n as usize], 1));
    }
    println!("b(n) = -Σ_{{d|n}} d c(d) holds for every n ≤ {bound}");

    // missing bad-prime values are refused rather than guessed
    let err = CoefficientTable::build(&curves::ap_table(&e, 20), &BTreeMap::new(), 20).unwrap_err();
    println!("without a_11: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
